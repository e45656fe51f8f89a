#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "loopfock/fock/scalar.hpp"

namespace loopfock {

// Variable x_{-depth}^{coord}; coord runs over 1..m.
struct SlotIndex {
  int depth = 1;
  int coord = 1;
  friend bool operator==(const SlotIndex&, const SlotIndex&) = default;
};

// Sorted slot keys with repetition; key = depth * 64 + (coord - 1).
using Monomial = std::vector<std::uint16_t>;

inline std::uint16_t slot_key(SlotIndex s) {
  return static_cast<std::uint16_t>(s.depth * 64 + (s.coord - 1));
}
inline SlotIndex slot_of(std::uint16_t key) { return SlotIndex{key / 64, key % 64 + 1}; }
inline int key_depth(std::uint16_t key) { return key / 64; }
inline int key_coord(std::uint16_t key) { return key % 64 + 1; }

// Graded order: degree first, then lexicographic on (depth, coord).
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Monomial monomial_of(std::initializer_list<SlotIndex> slots);
int monomial_depth(const Monomial& m);  // deepest slot, 0 for the constant

// (sum of terms) * exp(-pi c sum x^2) over m coordinates per depth, in the
// model truncated at depth D. Coefficients of monomials of depth <= W are
// exact infinite-model coefficients.
class GaussPoly {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  static constexpr int kMaxCoords = 64;
  static constexpr int kMaxDepth = 1000;

  GaussPoly(int m, int D, int W);
  static GaussPoly gaussian(int m, int D);

  int m() const { return m_; }
  int D() const { return D_; }
  int W() const { return W_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& mono, const Scalar& coef);
  Scalar coefficient(const Monomial& mono) const;

  // Keeps monomials of depth <= w and sets D = w, W = min(W, w).
  GaussPoly restricted(int w) const;
  GaussPoly with_window(int w) const;  // lowers W only

  GaussPoly operator-() const;
  GaussPoly scaled(const Scalar& c) const;
  // Sums combine ambient depth and window by minimum; deeper terms are dropped.
  friend GaussPoly operator+(const GaussPoly& a, const GaussPoly& b);
  friend GaussPoly operator-(const GaussPoly& a, const GaussPoly& b);

  std::size_t term_count() const { return terms_.size(); }
  // Number of nonzero terms of depth <= W.
  std::size_t window_term_count() const;

  std::string to_string() const;

 private:
  friend class GaussPolyAccess;
  int m_, D_, W_;
  Terms terms_;
};

// Equality of all coefficients of monomials of depth <= w.
bool window_equal(const GaussPoly& a, const GaussPoly& b, int w);
bool window_equal(const GaussPoly& a, const GaussPoly& b);  // at min(W)

GaussPoly gaussian(int m, int D);
GaussPoly mul_var(const GaussPoly& f, SlotIndex idx);
GaussPoly derive(const GaussPoly& f, SlotIndex idx);
GaussPoly pi_t(const GaussPoly& f);
GaussPoly pi_t_partial(const GaussPoly& f, int coord);
Scalar slice_integral(const GaussPoly& f, int k);

// int y^e exp(-pi c y^2) dy
Scalar gaussian_moment(int e);

// One term of a first-order operator: coeff * sum_{i>=1} x_{-(i+mul_offset)}^{mul_coord}
// d/dx_{-(i+der_offset)}^{der_coord}, summed while both depths stay <= D.
struct VectorFieldTerm {
  int mul_coord;
  int mul_offset;
  int der_coord;
  int der_offset;
  Scalar coeff;
};

// Applies a sum of vector-field terms; the ambient depth and window of the
// result are set by the caller.
GaussPoly apply_vector_field(const GaussPoly& f, const std::vector<VectorFieldTerm>& field, int D_out,
                             int W_out);

// Polynomial value times the Gaussian; c = lambda^{-2/m}.
double eval_numeric(const GaussPoly& f, std::span<const double> point, double lambda);

}  // namespace loopfock
