#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grouprec {

/// A permutation of {0,...,n-1} stored as an image array: images()[i] is the
/// image of point i.  Points are 0-based everywhere in the API; the 1-based
/// convention of the text formats lives entirely in the parser/formatter.
///
/// Composition convention: compose(a, b) applies the RIGHT factor first,
/// i.e. (a*b)(i) = a(b(i)).
class Permutation {
public:
    Permutation() = default;
    static Permutation identity(int n);
    /// Validates that `images` is a bijection of {0..n-1}.
    static Permutation from_images(std::vector<int> images);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

    Permutation compose(const Permutation& rhs) const;  // this ∘ rhs
    Permutation inverse() const;

    bool is_identity() const;
    int fix_count() const;
    /// Number of distinct ordered k-tuples of fixed points:
    /// 0 if Fix < k, else Fix!/(Fix-k)!.
    std::uint64_t fix_k_count(int k) const;
    /// Even iff the permutation is a product of an even number of transpositions.
    bool is_even() const;
    /// True iff j lies on the cycle through i (same_cycle(i,i) is true).
    bool same_cycle(int i, int j) const;
    /// Nontrivial cycles, each rotated to start at its minimum, sorted by minimum.
    std::vector<std::vector<int>> cycles() const;
    /// Smallest point moved, or -1 for the identity.
    int smallest_moved_point() const;

    /// The induced permutation of the n(n-1) distinct ordered pairs,
    /// indexed by pair_index.  Requires degree >= 2.
    Permutation pair_lift() const;

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
    explicit Permutation(std::vector<int> img) : img_(std::move(img)) {}
    std::vector<int> img_;
};

/// Lexicographic enumeration of distinct ordered pairs (i,j), i != j, of
/// {0..n-1}: (0,1),(0,2),...,(0,n-1),(1,0),(1,2),...  The diagonal is
/// excluded by construction.
int pair_index(int n, int i, int j);
std::pair<int, int> pair_of_index(int n, int idx);

/// Parses cycle notation "(1,2)(3,4)" or image notation "[2,1,4,3]", both
/// 1-based, whitespace-insensitive.  Empty text is the identity.
/// Throws std::invalid_argument on malformed text, repeated points, or
/// points outside {1..n}.
Permutation parse_permutation(const std::string& text, int n);

/// Cycle notation, 1-based; the identity formats as "()".
std::string format_cycles(const Permutation& p);

}  // namespace grouprec
