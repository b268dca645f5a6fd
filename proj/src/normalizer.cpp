#include <cfmobius/normalizer.hpp>

#include <cfmobius/errors.hpp>

#include <utility>

namespace cfm {

IntMatrix2 SGenerator::matrix() const {
  switch (kind) {
    case GeneratorKind::shear_upper:
      return {1, parameter, 0, 1};
    case GeneratorKind::digit:
      return digit_matrix(parameter);
    case GeneratorKind::shear_lower:
      return {1, 0, parameter, 1};
    case GeneratorKind::negate_x:
      return {-1, 0, 0, 1};
    case GeneratorKind::negate_y:
      return {1, 0, 0, -1};
    case GeneratorKind::swap:
      return {0, 1, 1, 0};
  }
  throw std::logic_error("unknown generator kind");
}

std::string SGenerator::label() const {
  switch (kind) {
    case GeneratorKind::shear_upper:
      return "shear_upper(" + to_string(parameter) + ")";
    case GeneratorKind::digit:
      return "digit(" + to_string(parameter) + ")";
    case GeneratorKind::shear_lower:
      return "shear_lower(" + to_string(parameter) + ")";
    case GeneratorKind::negate_x:
      return "negate_x";
    case GeneratorKind::negate_y:
      return "negate_y";
    case GeneratorKind::swap:
      return "swap";
  }
  return "?";
}

IntMatrix2 Decomposition::generator_product() const {
  IntMatrix2 product;
  for (const SGenerator& g : generators) product = product * g.matrix();
  return product;
}

Decomposition decompose(const IntMatrix2& m) {
  Decomposition out{{}, m};
  // Peel S off the left: rest <- S^{-1} * rest. Every generator used here is
  // an involution or a shear whose inverse negates the parameter.
  Int a = m.a(), b = m.b(), c = m.c(), d = m.d();
  auto use = [&](GeneratorKind kind, Int k = 0) { out.generators.push_back({kind, std::move(k)}); };

  if (a < 0) {
    use(GeneratorKind::negate_x);
    a = -a;
    b = -b;
  }
  if (c < 0) {
    use(GeneratorKind::negate_y);
    c = -c;
    d = -d;
  }
  while (c != 0) {
    if (c >= a) {
      // a > 0 here: a == 0 is handled by the swap below.
      if (a == 0) {
        use(GeneratorKind::swap);
        std::swap(a, c);
        std::swap(b, d);
        continue;
      }
      Int q = c / a;
      c -= q * a;
      d -= q * b;
      use(GeneratorKind::shear_lower, std::move(q));
    }
    if (c != 0) {
      use(GeneratorKind::swap);
      std::swap(a, c);
      std::swap(b, d);
    }
  }
  if (d < 0) {
    use(GeneratorKind::negate_y);
    d = -d;
  }
  Int q = floor_div(b, d);
  if (q != 0) {
    b -= q * d;
    use(GeneratorKind::shear_upper, std::move(q));
  }
  out.residual = IntMatrix2(a, b, c, d);
  return out;
}

Absorbed absorb_prefix(const IntMatrix2& m, const CFInput& x, std::size_t j0) {
  if (!x.has_digit(j0 + 1)) {
    throw DomainError("absorb_prefix: " + x.literal() + " has no digit after a_" + std::to_string(j0));
  }
  IntMatrix2 product = m;
  for (std::size_t i = 0; i <= j0; ++i) product = product * digit_matrix(x.digit(i));
  return {std::move(product), x.tail(j0 + 1)};
}

Prepared prepare(const IntMatrix2& m, const CFInput& x) {
  Absorbed absorbed = absorb_prefix(m, x, 0);
  Decomposition dec = decompose(absorbed.matrix);
  IntMatrix2 core = dec.residual;
  return {std::move(dec), std::move(core), std::move(absorbed.tail)};
}

}  // namespace cfm
