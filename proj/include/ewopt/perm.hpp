#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ewopt {

/// Bijection of {1..n}. External indexing is 1-based; `image0` is the 0-based view.
class Permutation {
 public:
  /// Throws InvalidPermutation unless `images` is a bijection of {1..n}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t n);
  /// Parses the CLI text form "2,1,3" (pi(1)=2, pi(2)=1, pi(3)=3).
  static Permutation parse(std::string_view text);
  /// All n! permutations in lexicographic order of their image lists.
  static std::vector<Permutation> all(std::size_t n);

  std::size_t size() const { return images_.size(); }
  int operator()(int i) const;  // 1-based
  std::size_t image0(std::size_t i) const { return static_cast<std::size_t>(images_[i] - 1); }
  const std::vector<int>& images() const { return images_; }

  /// (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

struct LoopDecomposition {
  std::vector<std::vector<int>> loops;  // orbits, each sorted, ordered by smallest element
  std::size_t length = 0;               // largest orbit size
  bool cyclic = false;                  // length == n
};

LoopDecomposition loop_decomposition(const Permutation& p);

inline std::size_t loop_length(const Permutation& p) { return loop_decomposition(p).length; }

/// A permutation sigma with sigma o from o sigma^{-1} == to, when the two share a cycle type.
/// Throws InvalidArgument otherwise.
Permutation conjugator(const Permutation& from, const Permutation& to);

}  // namespace ewopt
