#include "ewopt/perm.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "ewopt/errors.hpp"

namespace ewopt {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n == 0) throw InvalidPermutation("permutation of an empty set");
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v - 1]) {
      throw InvalidPermutation("images are not a bijection of {1.." + std::to_string(n) + "}");
    }
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> images;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
      throw InvalidPermutation("cannot parse permutation '" + std::string(text) + "'");
    }
    images.push_back(value);
    pos = comma + 1;
  }
  return Permutation(std::move(images));
}

std::vector<Permutation> Permutation::all(std::size_t n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

int Permutation::operator()(int i) const {
  if (i < 1 || i > static_cast<int>(images_.size())) {
    throw InvalidArgument("permutation argument out of range");
  }
  return images_[i - 1];
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw DimensionMismatch("composing permutations of different size");
  std::vector<int> images(size());
  for (std::size_t i = 0; i < size(); ++i) images[i] = images_[other.image0(i)];
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(size());
  for (std::size_t i = 0; i < size(); ++i) images[image0(i)] = static_cast<int>(i) + 1;
  return Permutation(std::move(images));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out;
}

LoopDecomposition loop_decomposition(const Permutation& p) {
  LoopDecomposition result;
  std::vector<bool> visited(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (visited[start]) continue;
    std::vector<int> loop;
    for (std::size_t i = start; !visited[i]; i = p.image0(i)) {
      visited[i] = true;
      loop.push_back(static_cast<int>(i) + 1);
    }
    std::sort(loop.begin(), loop.end());
    result.length = std::max(result.length, loop.size());
    result.loops.push_back(std::move(loop));
  }
  result.cyclic = result.length == p.size();
  return result;
}

Permutation conjugator(const Permutation& from, const Permutation& to) {
  if (from.size() != to.size()) throw DimensionMismatch("conjugator: sizes differ");
  // Walk the cycles of both, longest first, and map them onto each other.
  auto cycles = [](const Permutation& p) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> visited(p.size(), false);
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (visited[s]) continue;
      std::vector<std::size_t> cycle;
      for (std::size_t i = s; !visited[i]; i = p.image0(i)) {
        visited[i] = true;
        cycle.push_back(i);
      }
      out.push_back(std::move(cycle));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
  };
  const auto src = cycles(from);
  const auto dst = cycles(to);
  if (src.size() != dst.size()) throw InvalidArgument("conjugator: cycle types differ");
  std::vector<int> images(from.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    if (src[c].size() != dst[c].size()) throw InvalidArgument("conjugator: cycle types differ");
    for (std::size_t k = 0; k < src[c].size(); ++k) {
      images[src[c][k]] = static_cast<int>(dst[c][k]) + 1;
    }
  }
  return Permutation(std::move(images));
}

}  // namespace ewopt
