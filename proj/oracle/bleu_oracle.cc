// Copyright 2026 The SPL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracle/bleu_oracle.h"

#include <algorithm>
#include <cmath>

namespace spl::oracle {
namespace {

bool SameGram(const std::vector<std::string>& a, size_t i, const std::vector<std::string>& b,
              size_t j, size_t n) {
  for (size_t k = 0; k < n; ++k) {
    if (a[i + k] != b[j + k]) return false;
  }
  return true;
}

size_t Occurrences(const std::vector<std::string>& s, const std::vector<std::string>& gram_src,
                   size_t at, size_t n) {
  size_t c = 0;
  for (size_t j = 0; j + n <= s.size(); ++j) {
    if (SameGram(s, j, gram_src, at, n)) ++c;
  }
  return c;
}

}  // namespace

double BruteForceBleu(const std::vector<std::vector<std::string>>& cands,
                      const std::vector<std::vector<std::string>>& refs) {
  double matched[4] = {0, 0, 0, 0};
  double total[4] = {0, 0, 0, 0};
  double c_len = 0;
  double r_len = 0;
  for (size_t s = 0; s < cands.size(); ++s) {
    const auto& c = cands[s];
    const auto& r = refs[s];
    c_len += static_cast<double>(c.size());
    r_len += static_cast<double>(r.size());
    for (size_t n = 1; n <= 4; ++n) {
      for (size_t i = 0; i + n <= c.size(); ++i) {
        total[n - 1] += 1;
        // Count each distinct gram once, at its first position.
        bool first = true;
        for (size_t j = 0; j < i; ++j) {
          if (SameGram(c, j, c, i, n)) first = false;
        }
        if (!first) continue;
        const size_t in_cand = Occurrences(c, c, i, n);
        const size_t in_ref = Occurrences(r, c, i, n);
        matched[n - 1] += static_cast<double>(std::min(in_cand, in_ref));
      }
    }
  }
  if (c_len == 0 || matched[0] == 0) return 0.0;
  double product = matched[0] / total[0];
  for (int n = 1; n < 4; ++n) product *= (matched[n] + 1) / (total[n] + 1);
  const double bp = c_len > r_len ? 1.0 : std::exp(1.0 - r_len / c_len);
  return 100.0 * bp * std::pow(product, 0.25);
}

}  // namespace spl::oracle
