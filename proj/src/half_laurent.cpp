#include "aklv/half_laurent.hpp"

#include <sstream>

namespace aklv {

int HalfLaurent::min_half() const {
  if (coeffs_.empty()) throw AklvError("min_half of zero");
  return coeffs_.begin()->first;
}

int HalfLaurent::max_half() const {
  if (coeffs_.empty()) throw AklvError("max_half of zero");
  return coeffs_.rbegin()->first;
}

bool HalfLaurent::integral_powers() const {
  for (const auto& [e, c] : coeffs_)
    if (e % 2 != 0) return false;
  return true;
}

bool HalfLaurent::is_poly_in_q() const {
  for (const auto& [e, c] : coeffs_)
    if (e % 2 != 0 || e < 0) return false;
  return true;
}

bool HalfLaurent::nonneg_coeffs() const {
  for (const auto& [e, c] : coeffs_)
    if (c < 0) return false;
  return true;
}

int HalfLaurent::deg_q() const {
  if (is_zero()) throw AklvError("deg_q of zero");
  if (!integral_powers()) throw AklvError("deg_q of non-integral powers");
  return max_half() / 2;
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent r;
  for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
  return r;
}

HalfLaurent HalfLaurent::operator+(const HalfLaurent& o) const {
  HalfLaurent r = *this;
  for (const auto& [e, c] : o.coeffs_) {
    auto it = r.coeffs_.find(e);
    if (it == r.coeffs_.end()) {
      r.coeffs_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.coeffs_.erase(it);
    }
  }
  return r;
}

HalfLaurent HalfLaurent::operator-(const HalfLaurent& o) const { return *this + (-o); }

HalfLaurent HalfLaurent::operator*(const HalfLaurent& o) const {
  HalfLaurent r;
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : o.coeffs_) {
      BigInt& slot = r.coeffs_[e1 + e2];
      slot += c1 * c2;
    }
  for (auto it = r.coeffs_.begin(); it != r.coeffs_.end();) {
    if (it->second == 0)
      it = r.coeffs_.erase(it);
    else
      ++it;
  }
  return r;
}

HalfLaurent HalfLaurent::bar() const {
  HalfLaurent r;
  for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
  return r;
}

HalfLaurent HalfLaurent::shifted(int half) const {
  HalfLaurent r;
  for (const auto& [e, c] : coeffs_) r.coeffs_[e + half] = c;
  return r;
}

std::optional<HalfLaurent> HalfLaurent::divide_exact(const HalfLaurent& o) const {
  if (o.is_zero()) throw AklvError("division by zero");
  if (is_zero()) return HalfLaurent();
  // Shift both to genuine polynomials (units q^{k/2} divide everything), then
  // do ordinary long division and demand a zero remainder.
  const int sa = min_half(), sb = o.min_half();
  HalfLaurent rem = shifted(-sa);
  HalfLaurent div = o.shifted(-sb);
  HalfLaurent quot;
  const int dlead = div.max_half();
  const BigInt dc = div.coeffs().rbegin()->second;
  while (!rem.is_zero() && rem.max_half() >= dlead) {
    const int rl = rem.max_half();
    const BigInt rc = rem.coeffs().rbegin()->second;
    if (rc % dc != 0) return std::nullopt;
    HalfLaurent term = monomial(rc / dc, rl - dlead);
    quot += term;
    rem -= term * div;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot.shifted(sa - sb);
}

std::string HalfLaurent::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const int e = it->first;
    const BigInt& c = it->second;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    BigInt a = c < 0 ? BigInt(-c) : c;
    const bool show_coeff = (a != 1) || e == 0;
    if (show_coeff) os << a.str();
    if (e != 0) {
      if (show_coeff) os << "*";
      os << "q";
      if (e != 2) {
        if (e % 2 == 0)
          os << "^" << e / 2;
        else
          os << "^(" << e << "/2)";
      }
    }
  }
  return os.str();
}

std::vector<std::pair<int, std::string>> HalfLaurent::serialized() const {
  std::vector<std::pair<int, std::string>> out;
  out.reserve(coeffs_.size());
  for (const auto& [e, c] : coeffs_) out.emplace_back(e, c.str());
  return out;
}

HalfLaurent kl_extract(const HalfLaurent& g, int d) {
  if (d < 0) throw AklvError("kl_extract: d must be >= 0");
  if (g.is_zero()) return HalfLaurent();
  if (!g.integral_powers() || g.min_half() < 0 || g.max_half() > 2 * d)
    throw TheoremViolation("window violation: support of " + g.str() + " outside [0," +
                           std::to_string(d) + "] in q");
  // P = the part supported in q-degrees 0..floor((d-1)/2).
  HalfLaurent p;
  for (const auto& [e, c] : g.coeffs()) {
    if (e <= d - 1) p += HalfLaurent::monomial(c, e);
  }
  HalfLaurent rec = p - p.bar().shifted(2 * d);
  if (rec != g)
    throw TheoremViolation("window violation: " + g.str() + " is not P - q^" + std::to_string(d) +
                           "*bar(P)");
  return p;
}

namespace {
// content (gcd of coefficients), positive
BigInt content(const HalfLaurent& f) {
  BigInt g = 0;
  for (const auto& [e, c] : f.coeffs()) g = boost::multiprecision::gcd(g, c < 0 ? BigInt(-c) : c);
  return g;
}

// Normalize to min_half = 0 and positive leading coefficient.
HalfLaurent unit_normalize(const HalfLaurent& f) {
  if (f.is_zero()) return f;
  HalfLaurent r = f.shifted(-f.min_half());
  if (r.coeffs().rbegin()->second < 0) r = -r;
  return r;
}
}  // namespace

HalfLaurent laurent_gcd(const HalfLaurent& a, const HalfLaurent& b) {
  if (a.is_zero()) return unit_normalize(b);
  if (b.is_zero()) return unit_normalize(a);
  // Primitive PRS in the variable x = q^{1/2} over Z, Laurent-shifted to x^0.
  HalfLaurent f = unit_normalize(a), g = unit_normalize(b);
  BigInt cf = content(f), cg = content(g);
  BigInt cont = boost::multiprecision::gcd(cf, cg);
  auto primitive = [](HalfLaurent h) {
    BigInt c = content(h);
    if (c > 1) {
      HalfLaurent scaled;
      for (const auto& [e, x] : h.coeffs()) scaled += HalfLaurent::monomial(x / c, e);
      return scaled;
    }
    return h;
  };
  f = primitive(f);
  g = primitive(g);
  while (!g.is_zero()) {
    // pseudo-remainder: lc(g)^(k) * f mod g
    HalfLaurent r = f;
    const BigInt lg = g.coeffs().rbegin()->second;
    const int dg = g.max_half();
    while (!r.is_zero() && r.max_half() >= dg) {
      const BigInt lr = r.coeffs().rbegin()->second;
      const int dr = r.max_half();
      // r = lg*r - lr*x^(dr-dg)*g
      r = HalfLaurent(lg) * r - HalfLaurent::monomial(lr, dr - dg) * g;
    }
    f = g;
    g = primitive(unit_normalize(r));
  }
  HalfLaurent result = HalfLaurent(cont) * primitive(unit_normalize(f));
  return unit_normalize(result);
}

LaurentFrac::LaurentFrac(const HalfLaurent& n, const HalfLaurent& d) : num_(n), den_(d) {
  if (d.is_zero()) throw AklvError("LaurentFrac: zero denominator");
  normalize();
}

void LaurentFrac::normalize() {
  if (num_.is_zero()) {
    den_ = HalfLaurent::one();
    return;
  }
  HalfLaurent g = laurent_gcd(num_, den_);
  if (!g.is_one()) {
    auto qn = num_.divide_exact(g);
    auto qd = den_.divide_exact(g);
    if (!qn || !qd) throw AklvError("LaurentFrac: gcd does not divide");
    num_ = *qn;
    den_ = *qd;
  }
  // absorb the unit of den into num
  const int sh = den_.min_half();
  if (sh != 0) {
    den_ = den_.shifted(-sh);
    num_ = num_.shifted(-sh);
  }
  if (den_.coeffs().rbegin()->second < 0) {
    den_ = -den_;
    num_ = -num_;
  }
}

LaurentFrac LaurentFrac::operator+(const LaurentFrac& o) const {
  return LaurentFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
LaurentFrac LaurentFrac::operator-(const LaurentFrac& o) const {
  return LaurentFrac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
LaurentFrac LaurentFrac::operator*(const LaurentFrac& o) const {
  return LaurentFrac(num_ * o.num_, den_ * o.den_);
}
LaurentFrac LaurentFrac::operator/(const LaurentFrac& o) const {
  if (o.is_zero()) throw AklvError("LaurentFrac: division by zero");
  return LaurentFrac(num_ * o.den_, den_ * o.num_);
}
LaurentFrac LaurentFrac::operator-() const { return LaurentFrac(-num_, den_); }

std::optional<HalfLaurent> LaurentFrac::as_laurent() const {
  if (num_.is_zero()) return HalfLaurent();
  return num_.divide_exact(den_);
}

}  // namespace aklv
