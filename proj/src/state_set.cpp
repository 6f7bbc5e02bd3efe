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
#include "syncmdp/state_set.hpp"

#include <bit>

#include "syncmdp/errors.hpp"

namespace syncmdp {

namespace {
constexpr int kBits = 64;
} // namespace

StateSet::StateSet(int universe_size)
    : size_(universe_size), blocks_((universe_size + kBits - 1) / kBits, 0) {
    if (universe_size < 0) throw InputError("negative state-set universe");
}

StateSet StateSet::of(int universe_size, std::initializer_list<int> members) {
    StateSet s(universe_size);
    for (int m : members) s.set(m);
    return s;
}

void StateSet::check_index(int index) const {
    if (index < 0 || index >= size_) {
        throw InputError("state index " + std::to_string(index) + " outside universe of size " +
                         std::to_string(size_));
    }
}

void StateSet::check_same_universe(const StateSet& other) const {
    if (size_ != other.size_) {
        throw InputError("state-set universe mismatch (" + std::to_string(size_) + " vs " +
                         std::to_string(other.size_) + ")");
    }
}

void StateSet::set(int index) {
    check_index(index);
    blocks_[index / kBits] |= std::uint64_t{1} << (index % kBits);
}

void StateSet::reset(int index) {
    check_index(index);
    blocks_[index / kBits] &= ~(std::uint64_t{1} << (index % kBits));
}

bool StateSet::test(int index) const {
    check_index(index);
    return (blocks_[index / kBits] >> (index % kBits)) & 1u;
}

int StateSet::count() const {
    int total = 0;
    for (auto block : blocks_) total += std::popcount(block);
    return total;
}

bool StateSet::empty() const {
    for (auto block : blocks_) {
        if (block != 0) return false;
    }
    return true;
}

bool StateSet::full() const { return count() == size_; }

bool StateSet::is_subset_of(const StateSet& other) const {
    check_same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i] & ~other.blocks_[i]) return false;
    }
    return true;
}

bool StateSet::intersects(const StateSet& other) const {
    check_same_universe(other);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i] & other.blocks_[i]) return true;
    }
    return false;
}

StateSet StateSet::operator&(const StateSet& other) const {
    check_same_universe(other);
    StateSet out(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = blocks_[i] & other.blocks_[i];
    return out;
}

StateSet StateSet::operator|(const StateSet& other) const {
    check_same_universe(other);
    StateSet out(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = blocks_[i] | other.blocks_[i];
    return out;
}

StateSet StateSet::operator-(const StateSet& other) const {
    check_same_universe(other);
    StateSet out(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = blocks_[i] & ~other.blocks_[i];
    return out;
}

StateSet StateSet::complement() const {
    StateSet out(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = ~blocks_[i];
    // Clear padding bits beyond the universe.
    const int used = size_ % kBits;
    if (used != 0 && !out.blocks_.empty()) {
        out.blocks_.back() &= (std::uint64_t{1} << used) - 1;
    }
    return out;
}

bool StateSet::operator<(const StateSet& other) const {
    if (size_ != other.size_) return size_ < other.size_;
    return blocks_ < other.blocks_;
}

std::vector<int> StateSet::members() const {
    std::vector<int> out;
    for (int i = 0; i < size_; ++i) {
        if (test(i)) out.push_back(i);
    }
    return out;
}

} // namespace syncmdp
