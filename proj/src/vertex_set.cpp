#include "continuum_lab/vertex_set.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : VertexSet(universe) {
  for (std::size_t v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, const std::vector<std::size_t>& members)
    : VertexSet(universe) {
  for (std::size_t v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
  if (universe == 0) return VertexSet(0);
  return range(universe, 0, universe - 1);
}

VertexSet VertexSet::range(std::size_t universe, std::size_t first, std::size_t last) {
  VertexSet s(universe);
  for (std::size_t v = first; v <= last; ++v) s.insert(v);
  return s;
}

std::size_t VertexSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool VertexSet::contains(std::size_t v) const {
  if (v >= universe_) return false;
  return (words_[v / 64] >> (v % 64)) & 1U;
}

void VertexSet::insert(std::size_t v) {
  if (v >= universe_) {
    throw DomainError("vertex " + std::to_string(v) + " outside universe of size " +
                      std::to_string(universe_));
  }
  words_[v / 64] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(std::size_t v) {
  if (v >= universe_) return;
  words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
}

void VertexSet::check_universe(const VertexSet& other) const {
  if (other.universe_ != universe_) {
    throw DomainError("vertex sets over different universes (" + std::to_string(universe_) +
                      " vs " + std::to_string(other.universe_) + ")");
  }
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

VertexSet VertexSet::operator|(const VertexSet& other) const {
  VertexSet r = *this;
  r |= other;
  return r;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

VertexSet VertexSet::operator&(const VertexSet& other) const {
  check_universe(other);
  VertexSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= other.words_[w];
  return r;
}

VertexSet VertexSet::operator-(const VertexSet& other) const {
  check_universe(other);
  VertexSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~other.words_[w];
  return r;
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t v) { out.push_back(v); });
  return out;
}

std::size_t VertexSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return universe_;
}

std::size_t VertexSet::hash() const noexcept {
  std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool canonical_less(const VertexSet& a, const VertexSet& b) {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  return a.members() < b.members();
}

}  // namespace continuum_lab
