#include "charvar/surface_group.hpp"

#include <string>

#include "charvar/errors.hpp"
#include "charvar/representation.hpp"

namespace charvar {

Word Word::prefix(std::size_t length) const {
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + std::min(length, letters_.size())));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->generator, -it->exponent});
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

std::vector<int> Word::to_signed() const {
  std::vector<int> code;
  code.reserve(letters_.size());
  for (const auto& l : letters_) code.push_back(l.exponent * (l.generator + 1));
  return code;
}

Word Word::from_signed(const std::vector<int>& code) {
  std::vector<Letter> letters;
  letters.reserve(code.size());
  for (int c : code) {
    if (c == 0) throw InvalidInput("signed word code 0 is not a letter");
    letters.push_back({std::abs(c) - 1, c > 0 ? 1 : -1});
  }
  return Word(std::move(letters));
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back().generator == l.generator && stack.back().exponent == -l.exponent)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

void validate_word(const Word& w, int generator_count) {
  for (const auto& l : w.letters()) {
    if (l.generator < 0 || l.generator >= generator_count)
      throw InvalidInput("generator index " + std::to_string(l.generator) + " out of range");
    if (l.exponent != 1 && l.exponent != -1) throw InvalidInput("letter exponent must be +1 or -1");
  }
}

Word relator(int genus) {
  if (genus < 2) throw InvalidInput("surface genus must be at least 2, got " + std::to_string(genus));
  std::vector<Letter> letters;
  for (int i = 1; i <= genus; ++i) {
    const int a = SurfaceGroupPresentation::a(i);
    const int b = SurfaceGroupPresentation::b(i);
    letters.insert(letters.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  return Word(std::move(letters));
}

SurfaceGroupPresentation::SurfaceGroupPresentation(int genus) : genus_(genus), relator_(charvar::relator(genus)) {}

GroupRingElement fox_derivative_symbolic(const Word& w, int generator) {
  GroupRingElement out;
  std::vector<Letter> prefix;
  for (const auto& l : w.letters()) {
    if (l.generator == generator) {
      if (l.exponent > 0) {
        out[free_reduce(Word(prefix))] += 1;
      } else {
        auto with = prefix;
        with.push_back(l);
        out[free_reduce(Word(with))] -= 1;
      }
    }
    prefix.push_back(l);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

GroupElement evaluate_word(const Representation& rep, const Word& w) {
  validate_word(w, rep.generator_count());
  const int n = rep.spec.n;
  GroupElement g = GroupElement::Identity(n, n);
  for (const auto& l : w.letters()) g = g * (l.exponent > 0 ? rep.generators[l.generator] : rep.inverses[l.generator]);
  return g;
}

Matrix fox_jacobian(const Word& w, const Representation& rep, const LieAlgebra& algebra) {
  validate_word(w, rep.generator_count());
  const int n = rep.spec.n;
  const int d = algebra.dim();
  Matrix jac = Matrix::Zero(d, rep.generator_count() * d);
  GroupElement prefix = GroupElement::Identity(n, n);
  GroupElement prefix_inverse = GroupElement::Identity(n, n);
  for (const auto& l : w.letters()) {
    const auto& g = rep.generators[l.generator];
    const auto& gi = rep.inverses[l.generator];
    if (l.exponent > 0) {
      jac.middleCols(l.generator * d, d) += algebra.ad_matrix(prefix, prefix_inverse);
      prefix = prefix * g;
      prefix_inverse = gi * prefix_inverse;
    } else {
      prefix = prefix * gi;
      prefix_inverse = g * prefix_inverse;
      jac.middleCols(l.generator * d, d) -= algebra.ad_matrix(prefix, prefix_inverse);
    }
  }
  return jac;
}

Matrix fox_derivative(const Word& w, int generator, const Representation& rep, const LieAlgebra& algebra) {
  if (generator < 0 || generator >= rep.generator_count())
    throw InvalidInput("generator index " + std::to_string(generator) + " out of range");
  const int d = algebra.dim();
  return fox_jacobian(w, rep, algebra).middleCols(generator * d, d);
}

}  // namespace charvar
