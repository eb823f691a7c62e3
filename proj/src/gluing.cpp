#include "tla/gluing.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tla {

namespace {

std::string simplex_str(const std::vector<size_t>& s) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << ")";
  return os.str();
}

}  // namespace

bool Nerve::has_simplex(const std::vector<size_t>& s) const {
  if (s.size() == 1) return s[0] < num_charts;
  return std::find(simplices.begin(), simplices.end(), s) != simplices.end();
}

std::vector<std::vector<size_t>> Nerve::simplices_of_dim(size_t p) const {
  std::vector<std::vector<size_t>> out;
  if (p == 0) {
    for (size_t i = 0; i < num_charts; ++i) out.push_back({i});
    return out;
  }
  for (const auto& s : simplices)
    if (s.size() == p + 1) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

size_t Nerve::max_dim() const {
  size_t d = 0;
  for (const auto& s : simplices) d = std::max(d, s.size() - 1);
  return d;
}

const std::vector<Scalar>& Nerve::sample_point(
    const std::vector<size_t>& s) const {
  auto it = samples.find(s);
  if (it == samples.end() || it->second.empty())
    throw std::domain_error("nerve: no sample point for simplex " +
                            simplex_str(s));
  return it->second.front();
}

void Nerve::validate() const {
  if (boxes.size() != num_charts)
    throw std::domain_error("nerve: one box slot per chart required");
  for (const auto& b : boxes)
    if (b) {
      if (b->dim() != m)
        throw std::domain_error("nerve: box dimension mismatch");
      for (const auto& [lo, hi] : b->iv)
        if (!(lo < hi)) throw std::domain_error("nerve: empty box interval");
    }
  for (const auto& s : simplices) {
    if (s.size() < 2)
      throw std::domain_error("nerve: charts are implicit, simplices need "
                              "two or more indices");
    for (size_t k = 0; k < s.size(); ++k) {
      if (s[k] >= num_charts)
        throw std::domain_error("nerve: chart index out of range in " +
                                simplex_str(s));
      if (k > 0 && s[k - 1] >= s[k])
        throw std::domain_error("nerve: simplex not ascending " +
                                simplex_str(s));
    }
    if (std::count(simplices.begin(), simplices.end(), s) != 1)
      throw std::domain_error("nerve: duplicate simplex " + simplex_str(s));
    if (s.size() > 2) {
      for (size_t k = 0; k < s.size(); ++k) {
        std::vector<size_t> face = s;
        face.erase(face.begin() + static_cast<long>(k));
        if (!has_simplex(face))
          throw std::domain_error("nerve: missing face " + simplex_str(face) +
                                  " of " + simplex_str(s));
      }
    }
  }
  for (const auto& [s, pts] : samples)
    if (!has_simplex(s))
      throw std::domain_error("nerve: sample for unlisted simplex " +
                              simplex_str(s));
  auto check_samples = [&](const std::vector<size_t>& s) {
    auto it = samples.find(s);
    if (it == samples.end() || it->second.empty())
      throw std::domain_error("nerve: no sample point for simplex " +
                              simplex_str(s));
    for (const auto& pt : it->second) {
      if (pt.size() != m)
        throw std::domain_error("nerve: sample dimension mismatch at " +
                                simplex_str(s));
      for (const Scalar& c : pt)
        if (!c.is_real())
          throw std::domain_error("nerve: non-real sample coordinate at " +
                                  simplex_str(s));
      for (size_t i : s) {
        if (!boxes[i]) continue;
        for (size_t mu = 0; mu < m; ++mu) {
          const auto& [lo, hi] = boxes[i]->iv[mu];
          if (pt[mu].re < lo || pt[mu].re > hi)
            throw std::domain_error("nerve: sample for " + simplex_str(s) +
                                    " lies outside the box of chart " +
                                    std::to_string(i));
        }
      }
    }
  };
  for (size_t i = 0; i < num_charts; ++i) check_samples({i});
  for (const auto& s : simplices) check_samples(s);
}

PolyMat GluingData::alpha(size_t i, size_t j) const {
  if (i == j) return PolyMat::identity(algebra.dim());
  auto it = alpha_off.find({i, j});
  if (it == alpha_off.end())
    throw std::domain_error("gluing: no transition for pair (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
  return it->second;
}

PolyMat GluingData::chi(size_t i, size_t j) const {
  if (i == j) return PolyMat(algebra.dim(), nerve.m);
  auto it = chi_off.find({i, j});
  if (it == chi_off.end())
    throw std::domain_error("gluing: no shift for pair (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
  return it->second;
}

void validate_gluing(const GluingData& gd) {
  gd.nerve.validate();
  size_t n = gd.algebra.dim(), m = gd.nerve.m;
  auto in_nerve = [&](const std::pair<size_t, size_t>& pr) {
    std::vector<size_t> s{std::min(pr.first, pr.second),
                          std::max(pr.first, pr.second)};
    return pr.first != pr.second && gd.nerve.has_simplex(s);
  };
  for (const auto& [pr, mat] : gd.alpha_off) {
    if (!in_nerve(pr))
      throw std::domain_error("gluing: alpha on a pair that is not a "
                              "1-simplex");
    if (mat.rows() != n || mat.cols() != n)
      throw std::domain_error("gluing: alpha shape mismatch");
  }
  for (const auto& [pr, mat] : gd.chi_off) {
    if (!in_nerve(pr))
      throw std::domain_error("gluing: chi on a pair that is not a "
                              "1-simplex");
    if (mat.rows() != n || mat.cols() != m)
      throw std::domain_error("gluing: chi shape mismatch");
  }
  PolyMat id = PolyMat::identity(n);
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    size_t i = s[0], j = s[1];
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      PolyMat gab = gd.alpha(a, b);  // throws when absent
      gd.chi(a, b);
      if (!(gab * gd.alpha(b, a) == id))
        throw std::domain_error("gluing: alpha(" + std::to_string(a) + "," +
                                std::to_string(b) + ") has no two-sided "
                                "inverse partner");
      if (!(gab * gd.chi(b, a) + gd.chi(a, b)).is_zero())
        throw std::domain_error("gluing: chi pair relation fails on (" +
                                std::to_string(a) + "," + std::to_string(b) +
                                ")");
      if (!check_automorphism(gd.algebra, gab))
        throw std::domain_error("gluing: alpha(" + std::to_string(a) + "," +
                                std::to_string(b) +
                                ") is not an automorphism");
      PolyFn det = gab.det_laplace();
      if (det.is_constant()) {
        if (det.is_zero())
          throw std::domain_error("gluing: alpha degenerate");
      } else {
        for (const auto& pt : gd.nerve.samples.at(s))
          if (det.eval(pt).is_zero())
            throw std::domain_error(
                "gluing: alpha determinant vanishes at a sample point of " +
                simplex_str(s));
      }
    }
  }
}

std::string CheckReport::str() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << violations[k].what << " at " << simplex_str(violations[k].simplex);
  }
  return os.str();
}

CheckReport verify_cocycles(const GluingData& gd) {
  CheckReport rep;
  PolyMat id = PolyMat::identity(gd.algebra.dim());
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    size_t i = s[0], j = s[1];
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      if (!(gd.alpha(a, b) * gd.alpha(b, a) == id))
        rep.violations.push_back({{a, b}, "alpha pair inverse fails"});
      if (!(gd.alpha(a, b) * gd.chi(b, a) + gd.chi(a, b)).is_zero())
        rep.violations.push_back({{a, b}, "chi pair relation fails"});
      if (!check_automorphism(gd.algebra, gd.alpha(a, b)))
        rep.violations.push_back({{a, b}, "alpha is not an automorphism"});
    }
  }
  for (const auto& s : gd.nerve.simplices_of_dim(2)) {
    size_t perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& pr : perm) {
      size_t a = s[pr[0]], b = s[pr[1]], c = s[pr[2]];
      if (!(gd.alpha(a, c) == gd.alpha(a, b) * gd.alpha(b, c)))
        rep.violations.push_back(
            {{a, b, c}, "alpha triangle relation fails"});
      if (!(gd.chi(a, c) ==
            gd.alpha(a, b) * gd.chi(b, c) + gd.chi(a, b)))
        rep.violations.push_back({{a, b, c}, "chi triangle relation fails"});
    }
  }
  return rep;
}

TlaForm apply_alpha_hat(const GluingData& gd, size_t i, size_t j,
                        const TlaForm& f) {
  if (f.m() != gd.nerve.m || f.n() != gd.algebra.dim())
    throw std::domain_error("apply_alpha_hat: shape mismatch");
  if (f.basis() != InnerBasis::kTheta)
    throw std::domain_error("apply_alpha_hat: theta-basis input required");
  if (i == j) return f;
  std::vector<size_t> s{std::min(i, j), std::max(i, j)};
  if (!gd.nerve.has_simplex(s))
    throw std::domain_error("apply_alpha_hat: (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is not a 1-simplex");
  size_t n = f.n(), m = f.m();
  PolyMat back = gd.alpha(j, i);
  PolyMat shift = gd.chi(j, i);
  std::vector<TlaForm> images;
  images.reserve(n);
  for (size_t b = 0; b < n; ++b) {
    TlaForm img(m, n, ValueKind::kScalar, InnerBasis::kTheta);
    for (size_t a = 0; a < n; ++a)
      img.add(LegKey{0, 1u << a}, {back.at(b, a)});
    for (size_t mu = 0; mu < m; ++mu)
      img.add(LegKey{1u << mu, 0}, {shift.at(b, mu)});
    images.push_back(std::move(img));
  }
  TlaForm out = substitute_inner_legs(f, images, InnerBasis::kTheta);
  if (f.kind() == ValueKind::kAlgebra)
    out = map_value(out, gd.alpha(i, j), ValueKind::kAlgebra);
  return out;
}

CheckReport check_global_form(const GluingData& gd, const LocalFamily& fam) {
  CheckReport rep;
  if (fam.size() != gd.nerve.num_charts) {
    rep.violations.push_back({{}, "one local form per chart required"});
    return rep;
  }
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      if (!(apply_alpha_hat(gd, i, j, fam[j]) == fam[i]))
        rep.violations.push_back(
            {{i, j}, "transported local form mismatches"});
    }
  }
  return rep;
}

LocalFamily propagate_family(const GluingData& gd, size_t root,
                             const TlaForm& f) {
  size_t nc = gd.nerve.num_charts;
  if (root >= nc) throw std::domain_error("propagate_family: bad root chart");
  LocalFamily fam(nc, TlaForm(f.m(), f.n(), f.kind(), f.basis()));
  std::vector<bool> seen(nc, false);
  fam[root] = f;
  seen[root] = true;
  std::vector<size_t> queue{root};
  for (size_t head = 0; head < queue.size(); ++head) {
    size_t j = queue[head];
    for (const auto& s : gd.nerve.simplices_of_dim(1)) {
      size_t other;
      if (s[0] == j)
        other = s[1];
      else if (s[1] == j)
        other = s[0];
      else
        continue;
      if (seen[other]) continue;
      fam[other] = apply_alpha_hat(gd, other, j, fam[j]);
      seen[other] = true;
      queue.push_back(other);
    }
  }
  return fam;
}

LocalFamily global_total_diff(const GluingData& gd, const LocalFamily& fam) {
  CheckReport rep = check_global_form(gd, fam);
  if (!rep.ok())
    throw std::domain_error("global_total_diff: input is not global: " +
                            rep.str());
  LocalFamily out;
  out.reserve(fam.size());
  for (const TlaForm& f : fam) out.push_back(total_diff(gd.algebra, f));
  CheckReport rep2 = check_global_form(gd, out);
  if (!rep2.ok())
    throw std::logic_error("global_total_diff: differential broke "
                           "globality: " + rep2.str());
  return out;
}

CheckReport check_connection(const GluingData& gd,
                             const std::vector<PolyMat>& A) {
  CheckReport rep;
  if (A.size() != gd.nerve.num_charts) {
    rep.violations.push_back({{}, "one connection block per chart required"});
    return rep;
  }
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      if (!(A[i] == gd.alpha(i, j) * A[j] + gd.chi(i, j)))
        rep.violations.push_back({{i, j}, "connection gluing fails"});
    }
  }
  return rep;
}

CheckReport check_metric_triple(const GluingData& gd, const MetricTriple& t) {
  CheckReport rep;
  size_t n = gd.algebra.dim(), m = gd.nerve.m;
  if (t.h.size() != gd.nerve.num_charts || t.A.size() != gd.nerve.num_charts) {
    rep.violations.push_back({{}, "one inner metric and connection block per "
                                  "chart required"});
    return rep;
  }
  auto sym_ok = [](const ScalarMat& mm) {
    if (mm.rows() != mm.cols()) return false;
    for (size_t a = 0; a < mm.rows(); ++a)
      for (size_t b = 0; b < mm.cols(); ++b) {
        if (!mm.at(a, b).is_real()) return false;
        if (!(mm.at(a, b) == mm.at(b, a))) return false;
      }
    return !mm.det_laplace().is_zero();
  };
  if (t.g.rows() != m || !sym_ok(t.g))
    rep.violations.push_back({{}, "base metric not symmetric real "
                                  "invertible"});
  for (size_t i = 0; i < t.h.size(); ++i) {
    if (t.h[i].rows() != n || !sym_ok(t.h[i]))
      rep.violations.push_back({{i}, "inner metric not symmetric real "
                                     "invertible"});
    if (t.A[i].rows() != n || t.A[i].cols() != m)
      rep.violations.push_back({{i}, "connection block shape mismatch"});
  }
  if (!rep.ok()) return rep;
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      PolyMat g = gd.alpha(i, j);
      if (!(to_poly(t.h[j]) == g.transpose() * to_poly(t.h[i]) * g))
        rep.violations.push_back({{i, j}, "inner metric transition fails"});
    }
  }
  for (const auto& item : check_connection(gd, t.A).violations)
    rep.violations.push_back(item);
  return rep;
}

std::vector<MetricBlocks> triple_to_metric(const GluingData& gd,
                                           const MetricTriple& t) {
  std::vector<MetricBlocks> out;
  out.reserve(gd.nerve.num_charts);
  for (size_t i = 0; i < gd.nerve.num_charts; ++i)
    out.push_back(blocks_from_triple(ChartTriple{t.g, t.h[i], t.A[i]}));
  return out;
}

MetricTriple metric_to_triple(const GluingData& gd,
                              const std::vector<MetricBlocks>& md) {
  if (md.size() != gd.nerve.num_charts)
    throw std::domain_error("metric_to_triple: one block set per chart "
                            "required");
  MetricTriple t;
  for (size_t i = 0; i < md.size(); ++i) {
    ChartTriple ct = triple_from_blocks(md[i]);
    if (i == 0) {
      t.g = ct.g;
    } else if (!(t.g == ct.g)) {
      throw std::domain_error("metric_to_triple: recovered base metric "
                              "differs between charts");
    }
    t.h.push_back(ct.h);
    t.A.push_back(ct.A);
  }
  CheckReport rep = check_metric_triple(gd, t);
  if (!rep.ok())
    throw std::domain_error("metric_to_triple: transitions fail: " +
                            rep.str());
  return t;
}

std::vector<PolyMat> metric_connection(const GluingData& gd,
                                       const std::vector<MetricBlocks>& md) {
  if (md.size() != gd.nerve.num_charts)
    throw std::domain_error("metric_connection: one block set per chart "
                            "required");
  std::vector<PolyMat> A;
  A.reserve(md.size());
  for (const MetricBlocks& b : md)
    A.push_back(metric_connection_coeffs(b.h, b.gmix));
  CheckReport rep = check_connection(gd, A);
  if (!rep.ok())
    throw std::domain_error("metric_connection: blocks do not glue: " +
                            rep.str());
  return A;
}

bool check_inner_orientable(const GluingData& gd) {
  bool ok = true;
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      PolyFn det = gd.alpha(i, j).det_laplace();
      for (const auto& pt : gd.nerve.samples.at(s)) {
        Scalar v = det.eval(pt);
        if (v.is_zero())
          throw std::domain_error(
              "check_inner_orientable: alpha(" + std::to_string(i) + "," +
              std::to_string(j) + ") degenerates at a sample point of " +
              simplex_str(s));
        if (!v.is_real() || v.re < 0) ok = false;
      }
    }
  }
  return ok;
}

InnerIntegrateResult global_inner_integrate(const GluingData& gd,
                                            const LocalFamily& fam,
                                            const MetricTriple& t) {
  if (!check_inner_orientable(gd))
    throw std::domain_error("global_inner_integrate: cover is not inner "
                            "orientable");
  if (fam.size() != gd.nerve.num_charts)
    throw std::domain_error("global_inner_integrate: one local form per "
                            "chart required");
  InnerIntegrateResult res;
  for (size_t i = 0; i < fam.size(); ++i)
    res.parts.push_back(inner_integrate(fam[i], t.h[i]));
  for (const auto& s : gd.nerve.simplices_of_dim(1)) {
    for (auto [i, j] : {std::pair{s[0], s[1]}, std::pair{s[1], s[0]}}) {
      TlaForm expect =
          res.parts[j].kind() == ValueKind::kAlgebra
              ? map_value(res.parts[j], gd.alpha(i, j), ValueKind::kAlgebra)
              : res.parts[j];
      if (!(expect == res.parts[i]))
        res.report.violations.push_back(
            {{i, j}, "inner-integrated parts do not glue"});
    }
  }
  return res;
}

}  // namespace tla
