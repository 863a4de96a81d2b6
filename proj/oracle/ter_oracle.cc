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

#include "oracle/ter_oracle.h"

#include <algorithm>
#include <deque>
#include <map>

namespace spl::oracle {

size_t LevenshteinReference(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1, 0));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t best = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      best = std::min(best, d[i - 1][j] + 1);
      best = std::min(best, d[i][j - 1] + 1);
      d[i][j] = best;
    }
  }
  return d[a.size()][b.size()];
}

size_t ExhaustiveTerEdits(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                          size_t max_shifts) {
  // Breadth-first over arrangements reachable by block moves; the depth of
  // an arrangement is the fewest moves producing it.
  std::map<std::vector<std::string>, size_t> depth;
  std::deque<std::vector<std::string>> queue;
  depth[hyp] = 0;
  queue.push_back(hyp);
  while (!queue.empty()) {
    std::vector<std::string> cur = queue.front();
    queue.pop_front();
    const size_t dcur = depth[cur];
    if (dcur == max_shifts) continue;
    const size_t n = cur.size();
    for (size_t start = 0; start < n; ++start) {
      for (size_t end = start + 1; end <= n; ++end) {
        std::vector<std::string> block(cur.begin() + static_cast<long>(start),
                                       cur.begin() + static_cast<long>(end));
        std::vector<std::string> rest;
        for (size_t i = 0; i < n; ++i) {
          if (i < start || i >= end) rest.push_back(cur[i]);
        }
        for (size_t at = 0; at <= rest.size(); ++at) {
          std::vector<std::string> next(rest.begin(), rest.begin() + static_cast<long>(at));
          next.insert(next.end(), block.begin(), block.end());
          next.insert(next.end(), rest.begin() + static_cast<long>(at), rest.end());
          if (depth.count(next)) continue;
          depth[next] = dcur + 1;
          queue.push_back(std::move(next));
        }
      }
    }
  }
  size_t best = LevenshteinReference(hyp, ref);
  for (const auto& [arrangement, moves] : depth) {
    best = std::min(best, moves + LevenshteinReference(arrangement, ref));
  }
  return best;
}

}  // namespace spl::oracle
