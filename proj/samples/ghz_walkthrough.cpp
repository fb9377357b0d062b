// Copyright 2026 The vhvlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Walks through the three-photon vector state: operator eigenvalues, the
// diagonal expansion, a projection chain and the count table for rlr.

#include <cstdio>

#include "vhv/ghz.hpp"
#include "vhv/nogo.hpp"

int main() {
  using namespace vhv;
  const auto v = make_vghz().amps;

  for (const auto& c : all_ghz_configs()) {
    const auto a = apply_config(c, v);
    if (a.eigenvalue) {
      std::printf("%s  eigenvalue %+.0f\n", c.str().c_str(), a.eigenvalue->real());
    } else {
      std::printf("%s  not an eigenstate\n", c.str().c_str());
    }
  }

  std::printf("\ndiagonal basis:\n");
  for (const auto& t : basis_expand(v, GhzBasis::diagonal)) {
    if (std::abs(t.coef) > 1e-12) std::printf("  %s  %+.3f\n", t.labels.c_str(), t.coef.real());
  }

  const auto chain = chain_project(v, {{2, e_minus()}, {3, e_right()}});
  std::printf("\ne-(2) then eR(3) leaves slot %d with amplitudes (%.4f%+.4fi, %.4f%+.4fi)\n", chain.slots[0],
              chain.state[0].real(), chain.state[0].imag(), chain.state[1].real(), chain.state[1].imag());

  const auto table = full_table();
  const auto rlr = GhzConfig::parse("rlr");
  std::printf("\nrlr outcomes:\n");
  for (int o = 0; o < 8; ++o) {
    const auto s = outcome_signs(o);
    std::printf("  %+d %+d %+d  %.4f\n", s[0], s[1], s[2], table.at(rlr, s));
  }

  const auto search = ghz_instruction_search(3, ghz_qm_targets());
  std::printf("\ninstruction tables: best %d of 8 configurations, %d satisfy all\n", search.best_satisfied,
              search.satisfy_all);
  return 0;
}
