#pragma once

#include <map>
#include <vector>

#include "charvar/lie_backend.hpp"

namespace charvar {

// Generator indices follow the interleaved order a_1, b_1, ..., a_g, b_g,
// i.e. a_i = 2(i-1) and b_i = 2(i-1)+1.
struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1

  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

// Words are stored unreduced; free_reduce() is never applied implicitly.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word generator(int index, int exponent = 1) { return Word({Letter{index, exponent}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word prefix(std::size_t length) const;
  Word inverse() const;
  Word operator*(const Word& rhs) const;

  // Signed-integer form: generator index + 1, negated for an inverse letter.
  std::vector<int> to_signed() const;
  static Word from_signed(const std::vector<int>& code);

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(const Word& w);

// Throws InvalidInput unless every index is below generator_count and every exponent is +-1.
void validate_word(const Word& w, int generator_count);

class SurfaceGroupPresentation {
 public:
  explicit SurfaceGroupPresentation(int genus);

  int genus() const { return genus_; }
  int generator_count() const { return 2 * genus_; }
  const Word& relator() const { return relator_; }

  static int a(int i) { return 2 * (i - 1); }      // 1-based handle index
  static int b(int i) { return 2 * (i - 1) + 1; }

 private:
  int genus_;
  Word relator_;
};

/// prod_i a_i b_i a_i^{-1} b_i^{-1}; throws InvalidInput for genus < 2.
Word relator(int genus);

// Integer group-ring element: formal sum of (freely reduced) words.
using GroupRingElement = std::map<Word, long>;

// Fox derivative d w / d x_j as a group-ring element, built by one left-to-right
// pass: an occurrence x_j at prefix p contributes +p, an occurrence x_j^{-1}
// contributes -p x_j^{-1}.
GroupRingElement fox_derivative_symbolic(const Word& w, int generator);

struct Representation;

/// Product of the generator matrices along w (identity for the empty word).
GroupElement evaluate_word(const Representation& rep, const Word& w);

/// Fox derivative of w with respect to generator j, evaluated through Ad o rho:
/// a dim_g x dim_g matrix acting on algebra coordinates.
Matrix fox_derivative(const Word& w, int generator, const Representation& rep, const LieAlgebra& algebra);

/// All Fox derivatives of w side by side: dim_g x (2g dim_g). Applied to the
/// coordinate vector of a 1-cochain u it yields u(w).
Matrix fox_jacobian(const Word& w, const Representation& rep, const LieAlgebra& algebra);

}  // namespace charvar
