#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace roughsew {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A word over the alphabet {1..d}; the empty word is the unit.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<int> letters) : letters_(letters) {}

  int degree() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }
  int operator[](std::size_t i) const { return letters_[i]; }

  Word prefix(int length) const;
  Word suffix_from(int start) const;
  Word concat(const Word& other) const;

  /// Dot notation "1.2.1"; the empty word is "".
  std::string to_string() const;
  /// Inverse of to_string. Throws ParseError.
  static Word parse(std::string_view text);

  /// Lexicographic order, a proper prefix before its extensions.
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

using WordCombination = std::map<Word, Integer>;
using PairCombination = std::map<std::pair<Word, Word>, Integer>;
using TripleCombination = std::map<std::tuple<Word, Word, Word>, Integer>;
using RationalCombination = std::map<Word, Rational>;

/// u shuffle v by the recursion (ua) sh (vb) = (u sh vb) a + (ua sh v) b.
WordCombination shuffle(const Word& u, const Word& v);
/// Product of two combinations, extended bilinearly.
WordCombination shuffle(const WordCombination& a, const WordCombination& b);

/// Sum over k = 1..n-1 of (i1..ik) (x) (ik+1..in).
PairCombination deconcatenate(const Word& w);

/// Strictly smaller than every proper suffix.
bool is_lyndon(const Word& w);
/// Duval's algorithm: w = l1 l2 ... lk with Lyndon l1 >= l2 >= ... >= lk.
std::vector<Word> lyndon_factorization(const Word& w);

/// Polynomial in Lyndon words under the shuffle product, exact coefficients.
class WordPolynomial {
 public:
  /// Multiset of Lyndon words, kept sorted.
  using Monomial = std::vector<Word>;

  void add(Monomial monomial, const Rational& coeff);
  void add_scaled(const WordPolynomial& other, const Rational& factor);
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  template <typename ValueOf>
  double evaluate(ValueOf&& value_of) const {
    double total = 0.0;
    for (const auto& [monomial, coeff] : terms_) {
      double term = coeff.template convert_to<double>();
      for (const Word& w : monomial) term *= value_of(w);
      total += term;
    }
    return total;
  }

  friend bool operator==(const WordPolynomial&, const WordPolynomial&) = default;

 private:
  std::map<Monomial, Rational> terms_;
};

/// The shuffle Hopf algebra truncated at degree N, with every table built at
/// construction. Immutable afterwards.
class ShuffleAlgebra {
 public:
  static constexpr int kDefaultTruncation = 4;
  static constexpr int kDefaultCap = 8;
  /// Upper bound on sum_n (2d)^n, a proxy for the size of the product tables.
  static constexpr double kMaxTableWeight = 1 << 20;

  /// Throws TruncationExceeded if truncation > cap, std::invalid_argument
  /// for d < 1 or tables that would be too large.
  explicit ShuffleAlgebra(int alphabet_size, int truncation = kDefaultTruncation,
                          int cap = kDefaultCap);

  int alphabet_size() const { return d_; }
  int truncation() const { return n_max_; }

  /// Words of degree 1..N, numbered by (degree, lexicographic rank).
  std::size_t word_count() const { return offsets_.back(); }
  std::size_t id(const Word& w) const;
  const Word& word(std::size_t id) const { return all_words_[id]; }
  bool contains(const Word& w) const;

  const std::vector<Word>& words(int degree) const;
  const std::vector<Word>& lyndon_words(int degree) const;
  /// Lyndon words of degrees 1..degree, by degree then lexicographically.
  std::vector<Word> lyndon_words_up_to(int degree) const;

  /// Throws TruncationExceeded if |u| + |v| > N.
  WordCombination shuffle_product(const Word& u, const Word& v) const;
  /// Deconcatenation without the primitive terms; empty for degree 1.
  PairCombination reduced_coproduct(const Word& w) const;
  /// Reduced coproduct by word id.
  const std::vector<std::pair<std::size_t, std::size_t>>& reduced_coproduct_ids(
      std::size_t id) const {
    return coproduct_ids_[id];
  }
  /// Reduced coproduct plus w (x) 1 + 1 (x) w.
  PairCombination coproduct(const Word& w) const;

  /// (Id (x) D')D'w - (D' (x) Id)D'w with zero terms removed.
  TripleCombination coassociativity_defect(const Word& w) const;
  /// D(u sh v) - (m (x) m)(Id (x) swap (x) Id)(Du (x) Dv) with zero terms removed.
  PairCombination compatibility_defect(const Word& u, const Word& v) const;

  /// w as a polynomial in Lyndon words. Throws TruncationExceeded.
  const WordPolynomial& radford_decompose(const Word& w) const;
  /// Evaluates a polynomial back into the word basis.
  RationalCombination expand(const WordPolynomial& p) const;

 private:
  void check_degree(int degree) const;
  void build_radford();

  int d_;
  int n_max_;
  std::vector<std::size_t> offsets_;  // offsets_[n - 1] = first id of degree n
  std::vector<Word> all_words_;
  std::vector<std::vector<Word>> by_degree_;
  std::vector<std::vector<Word>> lyndon_;
  std::map<std::pair<std::size_t, std::size_t>, WordCombination> products_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> coproduct_ids_;
  std::vector<WordPolynomial> radford_;
};

}  // namespace roughsew
