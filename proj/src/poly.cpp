#include "tla/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace tla {

void Monomial::canonicalize() {
  while (!x.empty() && x.back() == 0) x.pop_back();
  while (!rho.empty() && rho.back() == 0) rho.pop_back();
}

int64_t Monomial::x_degree() const {
  int64_t d = 0;
  for (int32_t e : x) d += e;
  return d;
}

bool Monomial::has_negative_x() const {
  for (int32_t e : x)
    if (e < 0) return true;
  return false;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.x.resize(std::max(a.x.size(), b.x.size()), 0);
  r.rho.resize(std::max(a.rho.size(), b.rho.size()), 0);
  for (size_t i = 0; i < r.x.size(); ++i)
    r.x[i] = a.x_exp(i) + b.x_exp(i);
  for (size_t i = 0; i < r.rho.size(); ++i)
    r.rho[i] = a.rho_exp(i) + b.rho_exp(i);
  r.canonicalize();
  return r;
}

PolyFn PolyFn::constant(const Scalar& c) {
  PolyFn p;
  if (!c.is_zero()) p.terms_[Monomial{}] = c;
  return p;
}

PolyFn PolyFn::x(size_t mu, int32_t exp) {
  if (exp == 0) return constant(Scalar(1));
  Monomial m;
  m.x.resize(mu + 1, 0);
  m.x[mu] = exp;
  PolyFn p;
  p.terms_[m] = Scalar(1);
  return p;
}

PolyFn PolyFn::rho(size_t k, int32_t exp) {
  if (exp == 0) return constant(Scalar(1));
  if (exp < 0) throw std::domain_error("PolyFn: negative partition exponent");
  Monomial m;
  m.rho.resize(k + 1, 0);
  m.rho[k] = exp;
  PolyFn p;
  p.terms_[m] = Scalar(1);
  return p;
}

bool PolyFn::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.is_one();
}

Scalar PolyFn::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Scalar(0) : it->second;
}

bool PolyFn::has_rho() const {
  for (const auto& [m, c] : terms_)
    if (!m.rho.empty()) return true;
  return false;
}

bool PolyFn::has_negative_exponent() const {
  for (const auto& [m, c] : terms_)
    if (m.has_negative_x()) return true;
  return false;
}

size_t PolyFn::num_x_vars() const {
  size_t n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.x.size());
  return n;
}

size_t PolyFn::num_rho_vars() const {
  size_t n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, m.rho.size());
  return n;
}

void PolyFn::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  Monomial key = m;
  key.canonicalize();
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyFn operator+(const PolyFn& a, const PolyFn& b) {
  PolyFn r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

PolyFn operator-(const PolyFn& a, const PolyFn& b) {
  PolyFn r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

PolyFn operator-(const PolyFn& a) {
  PolyFn r;
  for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
  return r;
}

PolyFn operator*(const PolyFn& a, const PolyFn& b) {
  PolyFn r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

PolyFn operator*(const Scalar& c, const PolyFn& a) {
  PolyFn r;
  if (c.is_zero()) return r;
  for (const auto& [m, cc] : a.terms_) r.terms_[m] = c * cc;
  return r;
}

PolyFn PolyFn::pow(uint32_t e) const {
  PolyFn r = constant(Scalar(1));
  for (uint32_t i = 0; i < e; ++i) r *= *this;
  return r;
}

PolyFn PolyFn::derivative_x(size_t mu) const {
  PolyFn r;
  for (const auto& [m, c] : terms_) {
    int32_t e = m.x_exp(mu);
    if (e == 0) continue;
    Monomial d = m;
    if (d.x.size() <= mu) d.x.resize(mu + 1, 0);
    d.x[mu] = e - 1;
    d.canonicalize();
    r.add_term(d, Scalar(Rat(e)) * c);
  }
  return r;
}

PolyFn PolyFn::substitute_x(size_t mu, const PolyFn& value) const {
  PolyFn r;
  for (const auto& [m, c] : terms_) {
    int32_t e = m.x_exp(mu);
    if (e < 0)
      throw std::domain_error("PolyFn: substitution into a negative power");
    Monomial rest = m;
    if (rest.x.size() > mu) rest.x[mu] = 0;
    rest.canonicalize();
    PolyFn term;
    term.terms_[rest] = c;
    r += term * value.pow(static_cast<uint32_t>(e));
  }
  return r;
}

PolyFn PolyFn::substitute_rho(size_t k, const PolyFn& value) const {
  PolyFn r;
  for (const auto& [m, c] : terms_) {
    int32_t e = m.rho_exp(k);
    Monomial rest = m;
    if (rest.rho.size() > k) rest.rho[k] = 0;
    rest.canonicalize();
    PolyFn term;
    term.terms_[rest] = c;
    r += term * value.pow(static_cast<uint32_t>(e));
  }
  return r;
}

Scalar PolyFn::eval(const std::vector<Scalar>& point) const {
  Scalar total(0);
  for (const auto& [m, c] : terms_) {
    if (!m.rho.empty())
      throw std::domain_error("PolyFn: evaluating a partition symbol");
    Scalar v = c;
    for (size_t mu = 0; mu < m.x.size(); ++mu) {
      int32_t e = m.x[mu];
      if (e == 0) continue;
      if (mu >= point.size())
        throw std::domain_error("PolyFn: evaluation point too short");
      Scalar base = point[mu];
      if (e < 0) {
        base = base.inverse();  // throws on zero
        e = -e;
      }
      for (int32_t k = 0; k < e; ++k) v *= base;
    }
    total += v;
  }
  return total;
}

std::string PolyFn::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool needs_parens = !c.is_zero() && !c.is_real() && c.re != 0;
    if (!first) os << " + ";
    first = false;
    if (m.is_one()) {
      os << cs;
      continue;
    }
    if (c == Scalar(1)) {
      // bare monomial
    } else if (needs_parens) {
      os << "(" << cs << ")*";
    } else {
      os << cs << "*";
    }
    bool mfirst = true;
    for (size_t mu = 0; mu < m.x.size(); ++mu) {
      if (m.x[mu] == 0) continue;
      if (!mfirst) os << "*";
      mfirst = false;
      os << "x" << (mu + 1);
      if (m.x[mu] != 1) os << "^" << m.x[mu];
    }
    for (size_t k = 0; k < m.rho.size(); ++k) {
      if (m.rho[k] == 0) continue;
      if (!mfirst) os << "*";
      mfirst = false;
      os << "rho" << (k + 1);
      if (m.rho[k] != 1) os << "^" << m.rho[k];
    }
  }
  return os.str();
}

}  // namespace tla
