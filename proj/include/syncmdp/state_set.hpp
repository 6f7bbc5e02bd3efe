/*
 * Copyright 2026 The syncmdp authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <vector>

namespace syncmdp {

/// Fixed-universe bit set over dense state indices 0..size-1. Product
/// constructions can exceed 64 states, hence the block vector. Ordering is
/// lexicographic on blocks, giving a deterministic total order for map keys
/// and canonical clause sorting.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(int universe_size);

    /// Universe with exactly the given members set.
    static StateSet of(int universe_size, std::initializer_list<int> members);

    int universe_size() const { return size_; }

    void set(int index);
    void reset(int index);
    bool test(int index) const;

    int count() const;
    bool empty() const;
    bool full() const;

    bool is_subset_of(const StateSet& other) const;
    bool intersects(const StateSet& other) const;

    StateSet operator&(const StateSet& other) const;
    StateSet operator|(const StateSet& other) const;
    /// Set difference (elements of *this not in other).
    StateSet operator-(const StateSet& other) const;
    StateSet complement() const;

    bool operator==(const StateSet& other) const = default;
    bool operator<(const StateSet& other) const;

    /// Ascending member indices.
    std::vector<int> members() const;

private:
    void check_index(int index) const;
    void check_same_universe(const StateSet& other) const;

    int size_ = 0;
    std::vector<std::uint64_t> blocks_;
};

} // namespace syncmdp
