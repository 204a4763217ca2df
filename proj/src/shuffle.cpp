#include "roughsew/shuffle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "roughsew/error.hpp"

namespace roughsew {

Word Word::prefix(int length) const {
  return Word(std::vector<int>(letters_.begin(), letters_.begin() + length));
}

Word Word::suffix_from(int start) const {
  return Word(std::vector<int>(letters_.begin() + start, letters_.end()));
}

Word Word::concat(const Word& other) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(out));
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<int> letters;
  if (text.empty()) return {};
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = text.find('.', pos);
    const std::string_view part = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    int letter = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), letter);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size() || letter < 1)
      throw ParseError("invalid word '" + std::string(text) + "'");
    letters.push_back(letter);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return Word(std::move(letters));
}

namespace {

void add_to(WordCombination& into, const Word& w, const Integer& c) {
  auto [it, inserted] = into.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

template <typename Map, typename Key>
void accumulate(Map& into, Key&& key, const typename Map::mapped_type& c) {
  auto [it, inserted] = into.try_emplace(std::forward<Key>(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

void shuffle_into(const std::vector<int>& u, std::size_t nu, const std::vector<int>& v,
                  std::size_t nv, std::vector<int>& tail, WordCombination& out) {
  // tail holds the letters already placed at the end, in reverse order.
  if (nu == 0 || nv == 0) {
    std::vector<int> w;
    w.reserve(nu + nv + tail.size());
    w.insert(w.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(nu));
    w.insert(w.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nv));
    w.insert(w.end(), tail.rbegin(), tail.rend());
    add_to(out, Word(std::move(w)), 1);
    return;
  }
  tail.push_back(u[nu - 1]);
  shuffle_into(u, nu - 1, v, nv, tail, out);
  tail.back() = v[nv - 1];
  shuffle_into(u, nu, v, nv - 1, tail, out);
  tail.pop_back();
}

}  // namespace

WordCombination shuffle(const Word& u, const Word& v) {
  WordCombination out;
  std::vector<int> tail;
  shuffle_into(u.letters(), u.letters().size(), v.letters(), v.letters().size(), tail, out);
  return out;
}

WordCombination shuffle(const WordCombination& a, const WordCombination& b) {
  WordCombination out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b)
      for (const auto& [w, cw] : shuffle(u, v)) add_to(out, w, cu * cv * cw);
  return out;
}

PairCombination deconcatenate(const Word& w) {
  PairCombination out;
  for (int k = 1; k < w.degree(); ++k) out.emplace(std::pair{w.prefix(k), w.suffix_from(k)}, 1);
  return out;
}

std::vector<Word> lyndon_factorization(const Word& w) {
  const auto& s = w.letters();
  const std::size_t n = s.size();
  std::vector<Word> factors;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1, k = i;
    while (j < n && s[k] <= s[j]) {
      k = s[k] < s[j] ? i : k + 1;
      ++j;
    }
    while (i <= k) {
      factors.push_back(Word(std::vector<int>(s.begin() + static_cast<std::ptrdiff_t>(i),
                                              s.begin() + static_cast<std::ptrdiff_t>(i + j - k))));
      i += j - k;
    }
  }
  return factors;
}

bool is_lyndon(const Word& w) { return !w.empty() && lyndon_factorization(w).size() == 1; }

void WordPolynomial::add(Monomial monomial, const Rational& coeff) {
  if (coeff == 0) return;
  std::sort(monomial.begin(), monomial.end());
  accumulate(terms_, std::move(monomial), coeff);
}

void WordPolynomial::add_scaled(const WordPolynomial& other, const Rational& factor) {
  for (const auto& [m, c] : other.terms_) add(m, c * factor);
}

ShuffleAlgebra::ShuffleAlgebra(int alphabet_size, int truncation, int cap)
    : d_(alphabet_size), n_max_(truncation) {
  if (d_ < 1) throw std::invalid_argument("alphabet size must be at least 1");
  if (n_max_ < 1) throw std::invalid_argument("truncation level must be at least 1");
  if (n_max_ > cap)
    throw TruncationExceeded("truncation level " + std::to_string(n_max_) + " exceeds the cap " +
                             std::to_string(cap));
  double weight = 0.0;
  for (int n = 1; n <= n_max_; ++n) weight += std::pow(2.0 * d_, n);
  if (weight > kMaxTableWeight)
    throw std::invalid_argument("shuffle tables for d = " + std::to_string(d_) +
                                ", N = " + std::to_string(n_max_) + " are too large");

  offsets_.push_back(0);
  by_degree_.resize(static_cast<std::size_t>(n_max_) + 1);
  lyndon_.resize(static_cast<std::size_t>(n_max_) + 1);
  by_degree_[0].push_back(Word{});
  for (int n = 1; n <= n_max_; ++n) {
    auto& level = by_degree_[static_cast<std::size_t>(n)];
    for (const Word& w : by_degree_[static_cast<std::size_t>(n - 1)])
      for (int a = 1; a <= d_; ++a) level.push_back(w.concat(Word{a}));
    for (const Word& w : level) {
      all_words_.push_back(w);
      if (is_lyndon(w)) lyndon_[static_cast<std::size_t>(n)].push_back(w);
    }
    offsets_.push_back(all_words_.size());
  }

  coproduct_ids_.resize(all_words_.size());
  for (std::size_t i = 0; i < all_words_.size(); ++i) {
    const Word& w = all_words_[i];
    for (int k = 1; k < w.degree(); ++k)
      coproduct_ids_[i].emplace_back(id(w.prefix(k)), id(w.suffix_from(k)));
  }

  for (std::size_t i = 0; i < all_words_.size(); ++i) {
    for (std::size_t j = 0; j < all_words_.size(); ++j) {
      const Word& u = all_words_[i];
      const Word& v = all_words_[j];
      if (u.degree() + v.degree() > n_max_) continue;
      WordCombination p = shuffle(u, v);
      for (const auto& [w, c] : p)
        if (w.degree() != u.degree() + v.degree() || c < 0)
          throw std::logic_error("shuffle product left its degree");
      products_.emplace(std::pair{i, j}, std::move(p));
    }
  }
  build_radford();
}

void ShuffleAlgebra::check_degree(int degree) const {
  if (degree > n_max_)
    throw TruncationExceeded("degree " + std::to_string(degree) + " exceeds truncation level " +
                             std::to_string(n_max_));
}

bool ShuffleAlgebra::contains(const Word& w) const {
  if (w.empty() || w.degree() > n_max_) return false;
  return std::all_of(w.letters().begin(), w.letters().end(),
                     [&](int a) { return a >= 1 && a <= d_; });
}

std::size_t ShuffleAlgebra::id(const Word& w) const {
  if (w.empty()) throw std::invalid_argument("the empty word has no id");
  check_degree(w.degree());
  std::size_t rank = 0;
  for (int a : w.letters()) {
    if (a < 1 || a > d_)
      throw std::invalid_argument("letter " + std::to_string(a) + " outside alphabet 1.." +
                                  std::to_string(d_));
    rank = rank * static_cast<std::size_t>(d_) + static_cast<std::size_t>(a - 1);
  }
  return offsets_[static_cast<std::size_t>(w.degree() - 1)] + rank;
}

const std::vector<Word>& ShuffleAlgebra::words(int degree) const {
  if (degree < 0) throw std::invalid_argument("negative degree");
  check_degree(degree);
  return by_degree_[static_cast<std::size_t>(degree)];
}

const std::vector<Word>& ShuffleAlgebra::lyndon_words(int degree) const {
  if (degree < 1) throw std::invalid_argument("Lyndon words have degree >= 1");
  check_degree(degree);
  return lyndon_[static_cast<std::size_t>(degree)];
}

std::vector<Word> ShuffleAlgebra::lyndon_words_up_to(int degree) const {
  std::vector<Word> out;
  for (int n = 1; n <= degree; ++n) {
    const auto& l = lyndon_words(n);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

WordCombination ShuffleAlgebra::shuffle_product(const Word& u, const Word& v) const {
  check_degree(u.degree() + v.degree());
  if (u.empty()) return {{v, 1}};
  if (v.empty()) return {{u, 1}};
  return products_.at({id(u), id(v)});
}

PairCombination ShuffleAlgebra::reduced_coproduct(const Word& w) const {
  check_degree(w.degree());
  return deconcatenate(w);
}

PairCombination ShuffleAlgebra::coproduct(const Word& w) const {
  PairCombination out = reduced_coproduct(w);
  accumulate(out, std::pair{w, Word{}}, Integer(1));
  accumulate(out, std::pair{Word{}, w}, Integer(1));
  return out;
}

TripleCombination ShuffleAlgebra::coassociativity_defect(const Word& w) const {
  TripleCombination out;
  for (const auto& [pair, c] : reduced_coproduct(w)) {
    const auto& [a, b] = pair;
    for (const auto& [inner, ci] : reduced_coproduct(b))
      accumulate(out, std::tuple{a, inner.first, inner.second}, c * ci);
    for (const auto& [inner, ci] : reduced_coproduct(a))
      accumulate(out, std::tuple{inner.first, inner.second, b}, Integer(-(c * ci)));
  }
  return out;
}

PairCombination ShuffleAlgebra::compatibility_defect(const Word& u, const Word& v) const {
  PairCombination out;
  for (const auto& [w, c] : shuffle_product(u, v))
    for (const auto& [pair, cp] : coproduct(w)) accumulate(out, pair, c * cp);
  for (const auto& [pu, cu] : coproduct(u)) {
    for (const auto& [pv, cv] : coproduct(v)) {
      const WordCombination left = shuffle(pu.first, pv.first);
      const WordCombination right = shuffle(pu.second, pv.second);
      for (const auto& [l, cl] : left)
        for (const auto& [r, cr] : right)
          accumulate(out, std::pair{l, r}, Integer(-(cu * cv * cl * cr)));
    }
  }
  return out;
}

void ShuffleAlgebra::build_radford() {
  radford_.resize(all_words_.size());
  for (std::size_t i = 0; i < all_words_.size(); ++i) {
    // Ids run through each degree in lexicographic order, so every word
    // smaller than w is already decomposed.
    const Word& w = all_words_[i];
    const std::vector<Word> factors = lyndon_factorization(w);
    WordPolynomial poly;
    if (factors.size() == 1) {
      poly.add({w}, 1);
    } else {
      WordCombination product{{Word{}, 1}};
      for (const Word& f : factors) product = shuffle(product, WordCombination{{f, 1}});
      const Integer lead = product.at(w);
      poly.add(factors, 1);
      for (const auto& [v, c] : product) {
        if (v == w) continue;
        if (!(v < w)) throw std::logic_error("shuffle of Lyndon factors exceeds " + w.to_string());
        poly.add_scaled(radford_[id(v)], Rational(-c));
      }
      WordPolynomial scaled;
      scaled.add_scaled(poly, Rational(Integer(1), lead));
      poly = std::move(scaled);
    }
    radford_[i] = std::move(poly);
  }
}

const WordPolynomial& ShuffleAlgebra::radford_decompose(const Word& w) const {
  return radford_[id(w)];
}

RationalCombination ShuffleAlgebra::expand(const WordPolynomial& p) const {
  RationalCombination out;
  for (const auto& [monomial, coeff] : p.terms()) {
    int degree = 0;
    for (const Word& w : monomial) degree += w.degree();
    check_degree(degree);
    WordCombination product{{Word{}, 1}};
    for (const Word& w : monomial) product = shuffle(product, WordCombination{{w, 1}});
    for (const auto& [w, c] : product) accumulate(out, w, Rational(c) * coeff);
  }
  return out;
}

}  // namespace roughsew
