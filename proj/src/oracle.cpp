#include <cfmobius/oracle.hpp>

#include <cfmobius/errors.hpp>
#include <cfmobius/word.hpp>

#include <algorithm>
#include <map>
#include <utility>

namespace cfm {

namespace {

constexpr std::size_t kSurdStepCap = 1'000'000;

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

Surd::Surd(Int P, Int N, Int Q) : P_(std::move(P)), N_(std::move(N)), Q_(std::move(Q)) {
  if (Q_ == 0) throw DomainError("surd with zero denominator");
  if (N_ <= 0) throw DomainError("surd radicand must be positive");
  Int s = isqrt(N_);
  if (s * s == N_) throw DomainError("surd radicand " + to_string(N_) + " is a perfect square");
  Int rem = N_ - P_ * P_;
  if (rem % Q_ != 0) {
    Int q = abs_int(Q_);
    P_ *= q;
    N_ *= Q_ * Q_;
    Q_ *= q;
  }
}

Int Surd::floor() const {
  Int s = isqrt(N_);
  if (Q_ > 0) return floor_div(P_ + s, Q_);
  return floor_div(P_ + s + 1, Q_);
}

std::string Surd::literal() const {
  return "(" + to_string(P_) + "+sqrt(" + to_string(N_) + "))/" + to_string(Q_);
}

bool operator==(const Surd& lhs, const Surd& rhs) {
  return sign(lhs.Q_) == sign(rhs.Q_) && lhs.P_ * rhs.Q_ == rhs.P_ * lhs.Q_ &&
         lhs.N_ * rhs.Q_ * rhs.Q_ == rhs.N_ * lhs.Q_ * lhs.Q_;
}

int compare(const Surd& s, const Rational& r) {
  // (P + sqrt N)/Q - n/m = (mP - nQ + m sqrt N) / (mQ), m > 0
  const Int& n = r.get_num();
  const Int& m = r.get_den();
  return sign_of_quadratic(m * s.P() - n * s.Q(), m, s.N()) * sign(s.Q());
}

Surd to_surd(const QuadraticValue& v) {
  if (v.rational()) throw DomainError("to_surd: " + v.literal() + " is rational");
  Int n = v.q() * v.q() * v.n();
  if (v.q() > 0) return {v.p(), n, v.r()};
  return {-v.p(), n, -v.r()};
}

CFInput rational_cf(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("rational_cf: zero denominator");
  Int p = num, q = den;
  Int head = floor_div(p, q);
  std::vector<Int> digits;
  Int r = p - head * q;
  p = q;
  q = r;
  while (q != 0) {
    Int a = floor_div(p, q);
    r = p - a * q;
    digits.push_back(std::move(a));
    p = q;
    q = r;
  }
  return CFInput(std::move(head), std::move(digits));
}

CFInput rational_cf(const Rational& r) { return rational_cf(r.get_num(), r.get_den()); }

CFInput surd_cf(const Surd& s) {
  Int P = s.P(), Q = s.Q();
  const Int& N = s.N();
  const Int root = isqrt(N);
  auto floor_of = [&](const Int& p, const Int& q) {
    return q > 0 ? floor_div(p + root, q) : floor_div(p + root + 1, q);
  };
  auto step = [&](const Int& a) {
    P = a * Q - P;
    Q = (N - P * P) / Q;
  };

  Int head = floor_of(P, Q);
  step(head);
  std::vector<Int> digits;
  std::map<std::pair<Int, Int>, std::size_t> seen;
  for (std::size_t i = 0; i < kSurdStepCap; ++i) {
    auto [it, fresh] = seen.emplace(std::make_pair(P, Q), digits.size());
    if (!fresh) {
      std::vector<Int> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
      std::vector<Int> period(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
      return CFInput(std::move(head), std::move(pre), std::move(period));
    }
    Int a = floor_of(P, Q);
    step(a);
    digits.push_back(std::move(a));
  }
  throw Error("surd_cf: no period within " + std::to_string(kSurdStepCap) + " steps for " + s.literal());
}

Surd apply_moebius_surd(const IntMatrix2& m, const Surd& s) {
  // (u + a sqrt N) / (v + c sqrt N) = (uv - acN + Q det sqrt N) / (v^2 - c^2 N)
  const Int u = m.a() * s.P() + m.b() * s.Q();
  const Int v = m.c() * s.P() + m.d() * s.Q();
  Int X = u * v - m.a() * m.c() * s.N();
  Int Y = s.Q() * m.det();
  Int E = v * v - m.c() * m.c() * s.N();
  Int g = gcd(gcd(X, Y), E);
  X /= g;
  Y /= g;
  E /= g;
  if (Y < 0) {
    X = -X;
    E = -E;
  }
  return {std::move(X), Y * Y * s.N(), std::move(E)};
}

Surd cf_to_surd(const CFInput& x) {
  if (!x.periodic()) throw DomainError("cf_to_surd: " + x.literal() + " is finite");
  // y = [p1; ..., pk, y] solves C y^2 + (D - A) y - B = 0 with [[A,B],[C,D]] = pi(period).
  const IntMatrix2 cycle = pi(x.period());
  const Int diff = cycle.a() - cycle.d();
  Surd y(diff, diff * diff + 4 * cycle.b() * cycle.c(), 2 * cycle.c());
  FactorWord prefix{x.head()};
  prefix.insert(prefix.end(), x.preperiod().begin(), x.preperiod().end());
  return apply_moebius_surd(pi(prefix), y);
}

std::vector<Int> gosper_emit(const IntMatrix2& m, const CFInput& x, std::size_t count) {
  Int a = m.a(), b = m.b(), c = m.c(), d = m.d();
  std::vector<Int> out;
  if (count == 0) return out;
  for (std::size_t i = 0; x.has_digit(i); ++i) {
    const Int& t = x.digit(i);
    Int na = a * t + b;
    Int nc = c * t + d;
    b = std::move(a);
    d = std::move(c);
    a = std::move(na);
    c = std::move(nc);
    // The remaining tail lies in [1, inf], so M x lies between a/c and b/d.
    while (out.size() < count) {
      if (c < 0 && d < 0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
      }
      if (c <= 0 || d <= 0) break;
      Int q = floor_div(a, c);
      if (q != floor_div(b, d)) break;
      Int ra = a - q * c;
      Int rb = b - q * d;
      a = std::move(c);
      b = std::move(d);
      c = std::move(ra);
      d = std::move(rb);
      out.push_back(std::move(q));
    }
    if (out.size() >= count) return out;
  }
  // Finite input fully absorbed: the remaining value is exactly a / c.
  if (c == 0) {
    if (out.empty()) throw PoleError("M x is infinite for x = " + x.literal());
    return out;
  }
  CFInput rest = rational_cf(a, c);
  out.push_back(rest.head());
  for (const Int& digit : rest.preperiod()) {
    if (out.size() >= count) break;
    out.push_back(digit);
  }
  if (out.size() > count) out.resize(count);
  return out;
}

PeriodicImage periodic_max_quotient(const IntMatrix2& m, const CFInput& x) {
  CFInput image = surd_cf(apply_moebius_surd(m, cf_to_surd(x)));
  Int best = *std::max_element(image.period().begin(), image.period().end());
  return {std::move(best), std::move(image)};
}

}  // namespace cfm
