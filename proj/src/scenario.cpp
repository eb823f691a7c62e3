#include "tla/scenario.hpp"

#include <cctype>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

namespace tla {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& where, const std::string& msg) {
  throw std::invalid_argument(where + ": " + msg);
}

// ---------------------------------------------------------------- grammar

struct PolyParser {
  const std::string& s;
  size_t pos = 0;

  enum class Bare { kNone, kX, kRho };

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("\"" + s + "\": " + msg + " at position " +
                                std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Int digits() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos) fail("expected digits");
    return Int(s.substr(start, pos - start));
  }

  // Small positive index for variables and exponents.
  uint32_t small(const char* what, uint32_t lo, uint32_t hi) {
    Int v = digits();
    if (v < lo || v > hi)
      fail(std::string(what) + " out of range [" + std::to_string(lo) + ", " +
           std::to_string(hi) + "]");
    return v.convert_to<uint32_t>();
  }

  PolyFn parse_expr() {
    PolyFn v = parse_term();
    for (;;) {
      if (eat('+'))
        v += parse_term();
      else if (eat('-'))
        v -= parse_term();
      else
        return v;
    }
  }

  PolyFn parse_term() {
    PolyFn v = parse_unary();
    while (eat('*')) v *= parse_unary();
    return v;
  }

  PolyFn parse_unary() {
    if (eat('-')) return -parse_unary();
    return parse_power();
  }

  PolyFn parse_power() {
    Bare bare = Bare::kNone;
    size_t index = 0;
    PolyFn base = parse_atom(bare, index);
    if (!eat('^')) return base;
    bool neg = eat('-');
    uint32_t e = small("exponent", 0, 64);
    if (!neg) return base.pow(e);
    if (bare != Bare::kX)
      fail("negative powers are only defined on coordinate variables");
    return PolyFn::x(index, -static_cast<int32_t>(e));
  }

  PolyFn parse_atom(Bare& bare, size_t& index) {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      PolyFn v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = digits();
      if (eat('/')) {
        Int den = digits();
        if (den == 0) fail("zero denominator");
        return PolyFn(Scalar(Rat(num, den)));
      }
      return PolyFn(Scalar(Rat(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             std::isalpha(static_cast<unsigned char>(s[pos])))
        ++pos;
      std::string id = s.substr(start, pos - start);
      if (id == "i") return PolyFn(Scalar::i());
      if (id == "x") {
        index = small("variable index", 1, 32) - 1;
        bare = Bare::kX;
        return PolyFn::x(index);
      }
      if (id == "rho") {
        index = small("variable index", 1, 32) - 1;
        bare = Bare::kRho;
        return PolyFn::rho(index);
      }
      fail("unknown symbol '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

// ------------------------------------------------------------ json access

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object())
    fail_at(where, "expected an object");
  if (!j.contains(key))
    fail_at(where, std::string("missing required field '") + key + "'");
  return j.at(key);
}

size_t need_uint(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_unsigned())
    fail_at(where + "." + key, "expected a non-negative integer");
  return v.get<size_t>();
}

std::string need_str(const json& j, const char* key,
                     const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) fail_at(where + "." + key, "expected a string");
  return v.get<std::string>();
}

const json& need_array(const json& j, const char* key,
                       const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_array()) fail_at(where + "." + key, "expected an array");
  return v;
}

void check_keys(const json& j, std::initializer_list<const char*> keys,
                const std::string& where) {
  if (!j.is_object()) fail_at(where, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail_at(where, "unknown field '" + item.key() + "'");
  }
}

PolyFn parse_poly_at(const json& v, const std::string& where) {
  if (!v.is_string()) fail_at(where, "expected a string");
  try {
    return parse_poly(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail_at(where, e.what());
  }
}

Scalar parse_scalar_at(const json& v, const std::string& where) {
  if (!v.is_string()) fail_at(where, "expected a string");
  try {
    return parse_scalar(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail_at(where, e.what());
  }
}

Rat parse_rat_at(const json& v, const std::string& where) {
  Scalar s = parse_scalar_at(v, where);
  if (!s.is_real()) fail_at(where, "expected a real rational");
  return s.re;
}

std::string elem(const std::string& where, size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

// ----------------------------------------------------------- section load

LieAlgebra parse_algebra(const json& j, const std::string& where) {
  check_keys(j, {"name", "dim", "p", "brackets"}, where);
  try {
    if (j.contains("brackets")) {
      size_t n = need_uint(j, "dim", where);
      if (n == 0 || n > 16) fail_at(where + ".dim", "expected 1..16");
      std::string name =
          j.contains("name") ? need_str(j, "name", where) : "custom";
      std::vector c(n, std::vector(n, std::vector<Scalar>(n)));
      const json& br = need_array(j, "brackets", where);
      for (size_t t = 0; t < br.size(); ++t) {
        const std::string wt = elem(where + ".brackets", t);
        const json& e = br[t];
        if (!e.is_array() || e.size() != 4)
          fail_at(wt, "expected [a, b, c, coefficient]");
        for (size_t q = 0; q < 3; ++q)
          if (!e[q].is_number_unsigned() || e[q].get<size_t>() < 1 ||
              e[q].get<size_t>() > n)
            fail_at(wt, "basis index out of range");
        size_t a = e[0].get<size_t>() - 1, b = e[1].get<size_t>() - 1,
               k = e[2].get<size_t>() - 1;
        if (a >= b) fail_at(wt, "bracket entries need a < b");
        Scalar co = parse_scalar_at(e[3], wt);
        if (!c[a][b][k].is_zero()) fail_at(wt, "duplicate bracket entry");
        c[a][b][k] = co;
        c[b][a][k] = -co;
      }
      return LieAlgebra(name, n, std::move(c));
    }
    std::string name = need_str(j, "name", where);
    if (name == "abelian") return abelian_algebra(need_uint(j, "dim", where));
    if (name == "sl2") return sl2_algebra();
    if (name == "heis3") return heis3_algebra();
    if (name == "aff1") return aff1_algebra();
    if (name == "matrix") return matrix_algebra(need_uint(j, "p", where));
    fail_at(where + ".name", "unknown algebra '" + name + "'");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    fail_at(where, e.what());
  }
}

Nerve parse_nerve(const json& j, const std::string& where) {
  check_keys(j, {"m", "charts", "boxes", "simplices", "samples"}, where);
  Nerve nv;
  nv.m = need_uint(j, "m", where);
  nv.num_charts = need_uint(j, "charts", where);
  if (nv.m == 0 || nv.m > 8) fail_at(where + ".m", "expected 1..8");
  if (nv.num_charts == 0 || nv.num_charts > 16)
    fail_at(where + ".charts", "expected 1..16");
  nv.boxes.assign(nv.num_charts, std::nullopt);
  if (j.contains("boxes")) {
    const json& bx = need_array(j, "boxes", where);
    if (bx.size() != nv.num_charts)
      fail_at(where + ".boxes", "expected one entry per chart");
    for (size_t i = 0; i < bx.size(); ++i) {
      if (bx[i].is_null()) continue;
      const std::string wi = elem(where + ".boxes", i);
      if (!bx[i].is_array() || bx[i].size() != nv.m)
        fail_at(wi, "expected one [lo, hi] interval per coordinate");
      Box box;
      for (size_t mu = 0; mu < nv.m; ++mu) {
        const json& iv = bx[i][mu];
        if (!iv.is_array() || iv.size() != 2)
          fail_at(elem(wi, mu), "expected [lo, hi]");
        box.iv.emplace_back(parse_rat_at(iv[0], elem(wi, mu)),
                            parse_rat_at(iv[1], elem(wi, mu)));
      }
      nv.boxes[i] = std::move(box);
    }
  }
  if (j.contains("simplices")) {
    const json& sx = need_array(j, "simplices", where);
    for (size_t t = 0; t < sx.size(); ++t) {
      const std::string wt = elem(where + ".simplices", t);
      if (!sx[t].is_array() || sx[t].size() < 2)
        fail_at(wt, "expected at least two chart indices");
      std::vector<size_t> s;
      for (const json& v : sx[t]) {
        if (!v.is_number_unsigned()) fail_at(wt, "expected chart indices");
        s.push_back(v.get<size_t>());
      }
      nv.simplices.push_back(std::move(s));
    }
  }
  const json& sm = need(j, "samples", where);
  if (!sm.is_object()) fail_at(where + ".samples", "expected an object");
  for (const auto& item : sm.items()) {
    const std::string wk = where + ".samples." + item.key();
    std::vector<size_t> sigma;
    size_t pos = 0;
    const std::string& key = item.key();
    for (;;) {
      size_t comma = key.find(',', pos);
      std::string tok = key.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty() ||
          tok.find_first_not_of("0123456789") != std::string::npos)
        fail_at(wk, "keys are comma-joined chart indices");
      sigma.push_back(std::stoull(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!item.value().is_array() || item.value().empty())
      fail_at(wk, "expected a non-empty array of points");
    std::vector<std::vector<Scalar>> points;
    for (size_t t = 0; t < item.value().size(); ++t) {
      const json& pt = item.value()[t];
      if (!pt.is_array() || pt.size() != nv.m)
        fail_at(elem(wk, t), "expected one coordinate per chart variable");
      std::vector<Scalar> point;
      for (size_t mu = 0; mu < nv.m; ++mu)
        point.emplace_back(parse_rat_at(pt[mu], elem(wk, t)));
      points.push_back(std::move(point));
    }
    nv.samples[std::move(sigma)] = std::move(points);
  }
  try {
    nv.validate();
  } catch (const std::exception& e) {
    fail_at(where, e.what());
  }
  return nv;
}

uint32_t legs_to_mask(const json& j, const char* key, size_t lim,
                      const std::string& where) {
  uint32_t mask = 0;
  if (!j.contains(key)) return 0;
  const json& legs = j.at(key);
  if (!legs.is_array())
    fail_at(where + "." + key, "expected an array of leg indices");
  size_t prev = 0;
  for (const json& v : legs) {
    if (!v.is_number_unsigned() || v.get<size_t>() < 1 ||
        v.get<size_t>() > lim)
      fail_at(where + "." + key, "leg index out of range (1-based)");
    size_t idx = v.get<size_t>();
    if (idx <= prev)
      fail_at(where + "." + key, "leg indices must be strictly ascending");
    prev = idx;
    mask |= 1u << (idx - 1);
  }
  return mask;
}

GluingData parse_gluing(const json& j, const LieAlgebra& L, const Nerve& nv,
                        const std::string& where) {
  if (!j.is_array()) fail_at(where, "expected an array of pair entries");
  GluingData gd(L, nv);
  size_t n = L.dim();
  for (size_t t = 0; t < j.size(); ++t) {
    const std::string wt = elem(where, t);
    check_keys(j[t], {"i", "j", "alpha", "chi"}, wt);
    size_t a = need_uint(j[t], "i", wt);
    size_t b = need_uint(j[t], "j", wt);
    if (gd.alpha_off.count({a, b})) fail_at(wt, "duplicate pair");
    gd.alpha_off[{a, b}] =
        parse_poly_matrix(need(j[t], "alpha", wt), n, n, wt + ".alpha");
    gd.chi_off[{a, b}] =
        parse_poly_matrix(need(j[t], "chi", wt), n, nv.m, wt + ".chi");
  }
  try {
    validate_gluing(gd);
  } catch (const std::exception& e) {
    fail_at(where, e.what());
  }
  return gd;
}

MetricTriple parse_metric(const json& j, size_t m, size_t n, size_t charts,
                          const std::string& where) {
  check_keys(j, {"g", "h", "A"}, where);
  MetricTriple t;
  t.g = parse_scalar_matrix(need(j, "g", where), m, m, where + ".g");
  const json& hs = need_array(j, "h", where);
  const json& as = need_array(j, "A", where);
  if (hs.size() != charts) fail_at(where + ".h", "expected one per chart");
  if (as.size() != charts) fail_at(where + ".A", "expected one per chart");
  for (size_t i = 0; i < charts; ++i) {
    t.h.push_back(parse_scalar_matrix(hs[i], n, n, elem(where + ".h", i)));
    t.A.push_back(parse_poly_matrix(as[i], n, m, elem(where + ".A", i)));
  }
  auto real_symmetric = [&](const ScalarMat& mat, const std::string& w) {
    for (size_t r = 0; r < mat.rows(); ++r)
      for (size_t c = 0; c < mat.cols(); ++c)
        if (!mat.at(r, c).is_real()) fail_at(w, "entries must be real");
    if (!(mat == mat.transpose())) fail_at(w, "matrix must be symmetric");
  };
  real_symmetric(t.g, where + ".g");
  for (size_t i = 0; i < charts; ++i)
    real_symmetric(t.h[i], elem(where + ".h", i));
  return t;
}

FormFamily parse_family(const json& j, size_t m, size_t n, size_t charts,
                        const std::string& where) {
  check_keys(j, {"name", "kind", "charts"}, where);
  FormFamily fam;
  fam.name = j.contains("name") ? need_str(j, "name", where) : "";
  std::string kind = need_str(j, "kind", where);
  if (kind == "scalar")
    fam.kind = ValueKind::kScalar;
  else if (kind == "algebra")
    fam.kind = ValueKind::kAlgebra;
  else
    fail_at(where + ".kind", "expected 'scalar' or 'algebra'");
  const json& ch = need_array(j, "charts", where);
  if (ch.size() != charts)
    fail_at(where + ".charts", "expected one component list per chart");
  for (size_t i = 0; i < charts; ++i)
    fam.charts.push_back(
        parse_form(ch[i], m, n, fam.kind, elem(where + ".charts", i)));
  return fam;
}

struct ParsedTransitions {
  TransitionFamily tf;
  std::string model;
  std::vector<ScalarMat> basis;
};

ParsedTransitions parse_transitions(const json& j,
                                    std::optional<LieAlgebra>& algebra,
                                    const std::string& where) {
  check_keys(j, {"model", "rep_dim", "basis", "pairs"}, where);
  ParsedTransitions out;
  out.model = need_str(j, "model", where);
  size_t p = need_uint(j, "rep_dim", where);
  if (p == 0 || p > 4) fail_at(where + ".rep_dim", "expected 1..4");
  out.tf.rep_dim = p;
  if (out.model == "endomorphism") {
    if (j.contains("basis"))
      fail_at(where, "the endomorphism model fixes its realization basis");
    if (!algebra)
      algebra = matrix_algebra(p);
    else if (algebra->dim() != p * p)
      fail_at(where, "endomorphism model needs algebra dimension rep_dim^2");
    out.basis = matrix_realization(p);
  } else if (out.model == "atiyah") {
    if (!algebra)
      fail_at(where, "the atiyah model needs an algebra section");
    const json& bs = need_array(j, "basis", where);
    if (bs.size() != algebra->dim())
      fail_at(where + ".basis", "expected one matrix per generator");
    for (size_t a = 0; a < bs.size(); ++a)
      out.basis.push_back(
          parse_scalar_matrix(bs[a], p, p, elem(where + ".basis", a)));
  } else {
    fail_at(where + ".model", "expected 'atiyah' or 'endomorphism'");
  }
  const json& prs = need_array(j, "pairs", where);
  for (size_t t = 0; t < prs.size(); ++t) {
    const std::string wt = elem(where + ".pairs", t);
    check_keys(prs[t], {"i", "j", "g", "g_inv"}, wt);
    size_t a = need_uint(prs[t], "i", wt);
    size_t b = need_uint(prs[t], "j", wt);
    if (out.tf.g.count({a, b}) || out.tf.g.count({b, a}))
      fail_at(wt, "duplicate pair");
    out.tf.g[{a, b}] = parse_poly_matrix(need(prs[t], "g", wt), p, p,
                                         wt + ".g");
    out.tf.g[{b, a}] = parse_poly_matrix(need(prs[t], "g_inv", wt), p, p,
                                         wt + ".g_inv");
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------- public api

PolyFn parse_poly(const std::string& s) {
  PolyParser p{s};
  PolyFn v = p.parse_expr();
  p.skip_ws();
  if (p.pos != s.size()) p.fail("trailing characters");
  return v;
}

Scalar parse_scalar(const std::string& s) {
  PolyFn p = parse_poly(s);
  if (!p.is_constant())
    throw std::invalid_argument("\"" + s + "\": expected a constant");
  return p.constant_term();
}

Rat parse_rat(const std::string& s) {
  Scalar c = parse_scalar(s);
  if (!c.is_real())
    throw std::invalid_argument("\"" + s + "\": expected a real rational");
  return c.re;
}

PolyMat parse_poly_matrix(const json& j, size_t rows, size_t cols,
                          const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    fail_at(where, "expected " + std::to_string(rows) + " rows");
  PolyMat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail_at(elem(where, r),
              "expected " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c)
      m.at(r, c) = parse_poly_at(j[r][c], elem(elem(where, r), c));
  }
  return m;
}

ScalarMat parse_scalar_matrix(const json& j, size_t rows, size_t cols,
                              const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    fail_at(where, "expected " + std::to_string(rows) + " rows");
  ScalarMat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail_at(elem(where, r),
              "expected " + std::to_string(cols) + " entries");
    for (size_t c = 0; c < cols; ++c)
      m.at(r, c) = parse_scalar_at(j[r][c], elem(elem(where, r), c));
  }
  return m;
}

TlaForm parse_form(const json& j, size_t m, size_t n, ValueKind kind,
                   const std::string& where) {
  if (!j.is_array()) fail_at(where, "expected an array of components");
  TlaForm f(m, n, kind);
  for (size_t t = 0; t < j.size(); ++t) {
    const std::string wt = elem(where, t);
    check_keys(j[t], {"I", "J", "coeff", "value"}, wt);
    uint32_t dx = legs_to_mask(j[t], "I", m, wt);
    uint32_t th = legs_to_mask(j[t], "J", n, wt);
    PolyFn co = parse_poly_at(need(j[t], "coeff", wt), wt + ".coeff");
    std::vector<PolyFn> v;
    if (kind == ValueKind::kAlgebra) {
      const json& val = need_array(j[t], "value", wt);
      if (val.size() != n)
        fail_at(wt + ".value", "expected one entry per generator");
      for (size_t k = 0; k < n; ++k)
        v.push_back(co * parse_poly_at(val[k], elem(wt + ".value", k)));
    } else if (j[t].contains("value")) {
      const json& val = need_array(j[t], "value", wt);
      if (val.size() != 1) fail_at(wt + ".value", "expected one entry");
      v.push_back(co * parse_poly_at(val[0], elem(wt + ".value", 0)));
    } else {
      v.push_back(co);
    }
    f.add({dx, th}, v);
  }
  return f;
}

Scenario scenario_from_json(const json& j, const std::string& path) {
  check_keys(j, {"algebra", "nerve", "gluing", "transitions", "metric",
                 "forms", "params"},
             path);
  Scenario sc;
  sc.path = path;
  if (j.contains("algebra"))
    sc.algebra = parse_algebra(j.at("algebra"), path + ".algebra");
  if (j.contains("nerve"))
    sc.nerve = parse_nerve(j.at("nerve"), path + ".nerve");
  if (j.contains("gluing")) {
    if (!sc.algebra || !sc.nerve)
      fail_at(path + ".gluing", "needs algebra and nerve sections");
    sc.gluing =
        parse_gluing(j.at("gluing"), *sc.algebra, *sc.nerve, path + ".gluing");
  }
  if (j.contains("transitions")) {
    if (sc.gluing)
      fail_at(path + ".transitions",
              "give either gluing or transitions, not both");
    if (!sc.nerve) fail_at(path + ".transitions", "needs a nerve section");
    ParsedTransitions pt =
        parse_transitions(j.at("transitions"), sc.algebra,
                          path + ".transitions");
    sc.transitions = std::move(pt.tf);
    sc.transitions_model = std::move(pt.model);
    sc.transition_basis = std::move(pt.basis);
    try {
      sc.gluing = atiyah_gluing(*sc.algebra, sc.transition_basis, *sc.nerve,
                                *sc.transitions);
    } catch (const std::exception& e) {
      fail_at(path + ".transitions", e.what());
    }
  }
  if (j.contains("metric")) {
    if (!sc.algebra || !sc.nerve)
      fail_at(path + ".metric", "needs algebra and nerve sections");
    sc.metric = parse_metric(j.at("metric"), sc.nerve->m, sc.algebra->dim(),
                             sc.nerve->num_charts, path + ".metric");
  }
  if (j.contains("forms")) {
    if (!sc.algebra || !sc.nerve)
      fail_at(path + ".forms", "needs algebra and nerve sections");
    const json& fs = j.at("forms");
    if (!fs.is_array()) fail_at(path + ".forms", "expected an array");
    for (size_t t = 0; t < fs.size(); ++t) {
      FormFamily fam =
          parse_family(fs[t], sc.nerve->m, sc.algebra->dim(),
                       sc.nerve->num_charts, elem(path + ".forms", t));
      if (fam.name.empty()) fam.name = "form" + std::to_string(t);
      sc.forms.push_back(std::move(fam));
    }
  }
  if (j.contains("params")) {
    if (!j.at("params").is_object())
      fail_at(path + ".params", "expected an object");
    sc.params = j.at("params");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open scenario file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return scenario_from_json(j, path);
}

// ------------------------------------------------------------ serializers

json json_mat(const PolyMat& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json json_mat(const ScalarMat& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json json_form(const TlaForm& f) {
  json comps = json::array();
  auto legs = [](uint32_t mask) {
    json out = json::array();
    for (size_t idx : mask_to_list(mask)) out.push_back(idx + 1);
    return out;
  };
  for (const auto& [key, v] : f.comps()) {
    if (f.kind() == ValueKind::kScalar) {
      json c;
      c["I"] = legs(key.dx);
      c["J"] = legs(key.th);
      c["coeff"] = v[0].str();
      comps.push_back(std::move(c));
      continue;
    }
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      json c;
      c["I"] = legs(key.dx);
      c["J"] = legs(key.th);
      c["coeff"] = v[k].str();
      json unit = json::array();
      for (size_t t = 0; t < v.size(); ++t)
        unit.push_back(t == k ? "1" : "0");
      c["value"] = std::move(unit);
      comps.push_back(std::move(c));
    }
  }
  return comps;
}

json json_algebra(const LieAlgebra& L) {
  json out;
  out["name"] = L.name();
  out["dim"] = L.dim();
  json br = json::array();
  for (size_t a = 0; a < L.dim(); ++a)
    for (size_t b = a + 1; b < L.dim(); ++b)
      for (size_t k = 0; k < L.dim(); ++k)
        if (!L.c(a, b, k).is_zero())
          br.push_back(json::array(
              {a + 1, b + 1, k + 1, L.c(a, b, k).str()}));
  out["brackets"] = std::move(br);
  return out;
}

json json_nerve(const Nerve& nv) {
  json out;
  out["m"] = nv.m;
  out["charts"] = nv.num_charts;
  json boxes = json::array();
  for (const auto& b : nv.boxes) {
    if (!b) {
      boxes.push_back(nullptr);
      continue;
    }
    json ivs = json::array();
    for (const auto& [lo, hi] : b->iv)
      ivs.push_back(json::array({rat_str(lo), rat_str(hi)}));
    boxes.push_back(std::move(ivs));
  }
  out["boxes"] = std::move(boxes);
  out["simplices"] = nv.simplices;
  json samples = json::object();
  for (const auto& [sigma, points] : nv.samples) {
    std::string key;
    for (size_t k = 0; k < sigma.size(); ++k)
      key += (k ? "," : "") + std::to_string(sigma[k]);
    json pts = json::array();
    for (const auto& point : points) {
      json pt = json::array();
      for (const Scalar& c : point) pt.push_back(c.str());
      pts.push_back(std::move(pt));
    }
    samples[key] = std::move(pts);
  }
  out["samples"] = std::move(samples);
  return out;
}

json json_gluing(const GluingData& gd) {
  json out = json::array();
  for (const auto& [pr, alpha] : gd.alpha_off) {
    json e;
    e["i"] = pr.first;
    e["j"] = pr.second;
    e["alpha"] = json_mat(alpha);
    e["chi"] = json_mat(gd.chi(pr.first, pr.second));
    out.push_back(std::move(e));
  }
  return out;
}

json json_metric(const MetricTriple& t) {
  json out;
  out["g"] = json_mat(t.g);
  json hs = json::array();
  for (const ScalarMat& h : t.h) hs.push_back(json_mat(h));
  out["h"] = std::move(hs);
  json as = json::array();
  for (const PolyMat& a : t.A) as.push_back(json_mat(a));
  out["A"] = std::move(as);
  return out;
}

json json_scenario(const Scenario& sc) {
  json out;
  if (sc.algebra) out["algebra"] = json_algebra(*sc.algebra);
  if (sc.nerve) out["nerve"] = json_nerve(*sc.nerve);
  if (sc.transitions) {
    json tr;
    tr["model"] = sc.transitions_model;
    tr["rep_dim"] = sc.transitions->rep_dim;
    if (sc.transitions_model == "atiyah") {
      json bs = json::array();
      for (const ScalarMat& b : sc.transition_basis) bs.push_back(json_mat(b));
      tr["basis"] = std::move(bs);
    }
    json pairs = json::array();
    for (const auto& [pr, g] : sc.transitions->g) {
      if (pr.first > pr.second) continue;
      json e;
      e["i"] = pr.first;
      e["j"] = pr.second;
      e["g"] = json_mat(g);
      e["g_inv"] = json_mat(sc.transitions->at(pr.second, pr.first));
      pairs.push_back(std::move(e));
    }
    tr["pairs"] = std::move(pairs);
    out["transitions"] = std::move(tr);
  } else if (sc.gluing) {
    out["gluing"] = json_gluing(*sc.gluing);
  }
  if (sc.metric) out["metric"] = json_metric(*sc.metric);
  if (!sc.forms.empty()) {
    json fs = json::array();
    for (const FormFamily& fam : sc.forms) {
      json e;
      e["name"] = fam.name;
      e["kind"] = fam.kind == ValueKind::kScalar ? "scalar" : "algebra";
      json ch = json::array();
      for (const TlaForm& f : fam.charts) ch.push_back(json_form(f));
      e["charts"] = std::move(ch);
      fs.push_back(std::move(e));
    }
    out["forms"] = std::move(fs);
  }
  if (!sc.params.empty()) out["params"] = sc.params;
  return out;
}

}  // namespace tla
