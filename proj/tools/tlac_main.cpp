// Batch driver: runs one computation command over a scenario file and
// prints a structured JSON report. Exit code 0 when every reported check
// passes, 1 when some check fails, 2 on scenario or computation errors.

#include <bit>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tla/random_gen.hpp"
#include "tla/scenario.hpp"

namespace {

using nlohmann::json;
using namespace tla;

struct Report {
  json checks = json::array();
  json data = json::object();
  bool all_pass = true;

  void add(const std::string& name, bool ok, const std::string& detail = "") {
    json c;
    c["name"] = name;
    c["status"] = ok ? "pass" : "fail";
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(std::move(c));
    all_pass = all_pass && ok;
  }
};

const LieAlgebra& need_algebra(const Scenario& sc) {
  if (!sc.algebra)
    throw std::invalid_argument(sc.path +
                                ": this command needs an algebra section");
  return *sc.algebra;
}

const Nerve& need_nerve(const Scenario& sc) {
  if (!sc.nerve)
    throw std::invalid_argument(sc.path +
                                ": this command needs a nerve section");
  return *sc.nerve;
}

const GluingData& need_gluing(const Scenario& sc) {
  if (!sc.gluing)
    throw std::invalid_argument(
        sc.path + ": this command needs a gluing or transitions section");
  return *sc.gluing;
}

const MetricTriple& need_metric(const Scenario& sc) {
  if (!sc.metric)
    throw std::invalid_argument(sc.path +
                                ": this command needs a metric section");
  return *sc.metric;
}

uint64_t param_uint(const Scenario& sc, const char* key, uint64_t dflt) {
  if (!sc.params.contains(key)) return dflt;
  const json& v = sc.params.at(key);
  if (!v.is_number_unsigned())
    throw std::invalid_argument(sc.path + ": params." + key +
                                ": expected a non-negative integer");
  return v.get<uint64_t>();
}

std::string param_str(const Scenario& sc, const char* key,
                      const std::string& dflt) {
  if (!sc.params.contains(key)) return dflt;
  const json& v = sc.params.at(key);
  if (!v.is_string())
    throw std::invalid_argument(sc.path + ": params." + key +
                                ": expected a string");
  return v.get<std::string>();
}

TlaForm degree_part(const TlaForm& f, size_t p) {
  TlaForm out(f.m(), f.n(), f.kind(), f.basis());
  for (const auto& [key, v] : f.comps())
    if (static_cast<size_t>(std::popcount(key.dx) + std::popcount(key.th)) ==
        p)
      out.add(key, v);
  return out;
}

std::vector<size_t> total_degrees(const TlaForm& f) {
  std::vector<size_t> out;
  for (auto [r, s] : f.degrees()) {
    size_t p = r + s;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::string counted(uint64_t count, const char* what) {
  return std::to_string(count) + " " + what;
}

// ------------------------------------------------------------------ verify

void run_verify(const Scenario& sc, Report& rep) {
  const GluingData& gd = need_gluing(sc);
  CheckReport cr = verify_cocycles(gd);
  rep.add("cocycles", cr.ok(), cr.ok() ? "" : cr.str());
  for (const FormFamily& fam : sc.forms) {
    CheckReport fr = check_global_form(gd, fam.charts);
    rep.add("global-form:" + fam.name, fr.ok(), fr.ok() ? "" : fr.str());
  }
  if (sc.metric) {
    CheckReport mr = check_metric_triple(gd, *sc.metric);
    rep.add("metric-triple", mr.ok(), mr.ok() ? "" : mr.str());
    CheckReport ar = check_connection(gd, sc.metric->A);
    rep.add("connection", ar.ok(), ar.ok() ? "" : ar.str());
  }
  try {
    rep.data["inner_orientable"] = check_inner_orientable(gd);
  } catch (const std::exception& e) {
    rep.data["inner_orientable"] = std::string(e.what());
  }
}

// -------------------------------------------------------------------- diff

void run_diff(const Scenario& sc, uint64_t seed, Report& rep) {
  const LieAlgebra& L = need_algebra(sc);
  const Nerve& nv = need_nerve(sc);
  size_t m = nv.m, n = L.dim();
  json ders = json::object();
  for (const FormFamily& fam : sc.forms) {
    bool ok = true;
    json per = json::array();
    for (const TlaForm& f : fam.charts) {
      TlaForm df = total_diff(L, f);
      per.push_back(json_form(df));
      ok = ok && total_diff(L, df).is_zero();
    }
    ders[fam.name] = std::move(per);
    rep.add("dd-zero:" + fam.name, ok);
  }
  rep.data["differentials"] = std::move(ders);

  uint64_t count = param_uint(sc, "count", 20);
  Rng rng(seed);
  bool okd = true, oks = true, okt = true;
  for (uint64_t k = 0; k < count; ++k) {
    ValueKind kind = k % 2 ? ValueKind::kAlgebra : ValueKind::kScalar;
    TlaForm f = rng.form(m, n, kind, rng.below(m + n + 1));
    okd = okd && de_rham_d(de_rham_d(f)).is_zero();
    oks = oks && inner_diff(L, inner_diff(L, f)).is_zero();
    okt = okt && total_diff(L, total_diff(L, f)).is_zero();
  }
  rep.add("d-squared:random", okd, counted(count, "generated forms"));
  rep.add("inner-squared:random", oks, counted(count, "generated forms"));
  rep.add("dd-zero:random", okt, counted(count, "generated forms"));
}

// ------------------------------------------------------------------- hodge

void run_hodge(const Scenario& sc, uint64_t seed, Report& rep) {
  const LieAlgebra& L = need_algebra(sc);
  const Nerve& nv = need_nerve(sc);
  const MetricTriple& t = need_metric(sc);
  size_t m = nv.m, n = L.dim();

  auto star_star_law = [&](const TlaForm& f, size_t chart) {
    TlaForm st = hodge_star(f, t.g, t.h[chart], t.A[chart]);
    TlaForm stst = hodge_star(st, t.g, t.h[chart], t.A[chart]);
    // Involution constant: (-1)^{(m+n-p)p} times the metric signature factor
    // sgn(det g)*sgn(det h); the factor is +1 for definite metrics.
    int sig = (t.g.det_laplace().re < 0) != (t.h[chart].det_laplace().re < 0) ? -1 : 1;
    for (size_t p : total_degrees(f)) {
      Scalar sign(((m + n - p) * p % 2 ? -1 : 1) * sig);
      if (!(degree_part(stst, p) == sign * degree_part(f, p))) return false;
    }
    return true;
  };

  json stars = json::object();
  for (const FormFamily& fam : sc.forms) {
    bool ok = true;
    json per = json::array();
    for (size_t i = 0; i < fam.charts.size(); ++i) {
      per.push_back(json_form(hodge_star(fam.charts[i], t.g, t.h[i], t.A[i])));
      ok = ok && star_star_law(fam.charts[i], i);
    }
    stars[fam.name] = std::move(per);
    rep.add("star-star:" + fam.name, ok);
  }
  rep.data["stars"] = std::move(stars);

  std::vector<size_t> boxed;
  for (size_t i = 0; i < nv.num_charts; ++i)
    if (nv.boxes[i]) boxed.push_back(i);

  json prods = json::object();
  bool okp = true, any = false;
  for (size_t a = 0; a < sc.forms.size(); ++a)
    for (size_t b = a; b < sc.forms.size(); ++b) {
      if (sc.forms[a].kind != sc.forms[b].kind) continue;
      json entries = json::array();
      for (size_t i : boxed) {
        Scalar va = star_inner_product(sc.forms[a].charts[i],
                                       sc.forms[b].charts[i], t.g, t.h[i],
                                       t.A[i], *nv.boxes[i]);
        Scalar vb = star_inner_product_components(
            sc.forms[a].charts[i], sc.forms[b].charts[i], t.g, t.h[i],
            t.A[i], *nv.boxes[i]);
        okp = okp && va == vb;
        any = true;
        json e;
        e["chart"] = i;
        e["value"] = va.str();
        entries.push_back(std::move(e));
      }
      if (!entries.empty())
        prods[sc.forms[a].name + "," + sc.forms[b].name] = std::move(entries);
    }
  rep.data["scalar_products"] = std::move(prods);
  if (any) rep.add("product-paths:forms", okp);

  Rng rng(seed);
  uint64_t count = param_uint(sc, "count", 20);
  bool okss = true;
  for (uint64_t k = 0; k < count; ++k) {
    ValueKind kind = k % 2 ? ValueKind::kAlgebra : ValueKind::kScalar;
    TlaForm f = rng.form(m, n, kind, rng.below(m + n + 1));
    okss = okss && star_star_law(f, k % nv.num_charts);
  }
  rep.add("star-star:random", okss, counted(count, "generated forms"));

  if (!boxed.empty()) {
    uint64_t pairs = param_uint(sc, "pairs", 10);
    bool okpp = true;
    for (uint64_t k = 0; k < pairs; ++k) {
      size_t i = boxed[k % boxed.size()];
      ValueKind kind = k % 2 ? ValueKind::kAlgebra : ValueKind::kScalar;
      TlaForm f1 = rng.form(m, n, kind, rng.below(m + n + 1));
      TlaForm f2 = rng.form(m, n, kind, rng.below(m + n + 1));
      okpp = okpp &&
             star_inner_product(f1, f2, t.g, t.h[i], t.A[i], *nv.boxes[i]) ==
                 star_inner_product_components(f1, f2, t.g, t.h[i], t.A[i],
                                               *nv.boxes[i]);
    }
    rep.add("product-paths:random", okpp, counted(pairs, "generated pairs"));
  }
}

// --------------------------------------------------------------- integrate

void run_integrate(const Scenario& sc, Report& rep) {
  const LieAlgebra& L = need_algebra(sc);
  const Nerve& nv = need_nerve(sc);
  const MetricTriple& t = need_metric(sc);

  std::optional<size_t> trace_p;
  if (sc.params.contains("trace")) {
    size_t p = param_uint(sc, "trace", 0);
    if (p * p != L.dim())
      throw std::invalid_argument(sc.path +
                                  ": params.trace must square to the "
                                  "algebra dimension");
    need_gluing(sc);
    trace_p = p;
  }

  json inner = json::object(), integral = json::object(),
       traced = json::object();
  for (const FormFamily& fam : sc.forms) {
    json per = json::array(), vals = json::array();
    for (size_t i = 0; i < fam.charts.size(); ++i) {
      per.push_back(json_form(inner_integrate(fam.charts[i], t.h[i])));
      if (fam.kind == ValueKind::kScalar && nv.boxes[i])
        vals.push_back(
            integrate(fam.charts[i], t.h[i], *nv.boxes[i]).str());
      else
        vals.push_back(nullptr);
    }
    inner[fam.name] = std::move(per);
    integral[fam.name] = std::move(vals);

    if (sc.gluing && check_global_form(*sc.gluing, fam.charts).ok()) {
      try {
        InnerIntegrateResult res =
            global_inner_integrate(*sc.gluing, fam.charts, t);
        rep.add("inner-parts-glue:" + fam.name, res.report.ok(),
                res.report.ok() ? "" : res.report.str());
      } catch (const std::exception& e) {
        rep.add("inner-parts-glue:" + fam.name, false, e.what());
      }
    }
    if (trace_p && fam.kind == ValueKind::kAlgebra) {
      try {
        InnerIntegrateResult res =
            inner_integrate_trace(*sc.gluing, fam.charts, t, *trace_p);
        json per_tr = json::array();
        for (const TlaForm& part : res.parts) per_tr.push_back(json_form(part));
        traced[fam.name] = std::move(per_tr);
        rep.add("trace-parts-glue:" + fam.name, res.report.ok(),
                res.report.ok() ? "" : res.report.str());
      } catch (const std::exception& e) {
        rep.add("trace-parts-glue:" + fam.name, false, e.what());
      }
    }
  }
  rep.data["inner"] = std::move(inner);
  rep.data["integral"] = std::move(integral);
  if (trace_p) rep.data["trace"] = std::move(traced);
}

// ----------------------------------------------------------- lie-cohomology

void run_lie_cohomology(const Scenario& sc, Report& rep) {
  const LieAlgebra& L = need_algebra(sc);
  std::string which = param_str(sc, "rep", "both");
  std::vector<std::pair<std::string, ValueKind>> reps;
  if (which == "trivial" || which == "both")
    reps.emplace_back("trivial", ValueKind::kScalar);
  if (which == "adjoint" || which == "both")
    reps.emplace_back("adjoint", ValueKind::kAlgebra);
  if (reps.empty())
    throw std::invalid_argument(sc.path +
                                ": params.rep must be trivial, adjoint, or "
                                "both");
  for (const auto& [rname, rkind] : reps) {
    CeCohomology ce(L, rkind);
    json jr;
    jr["dims"] = ce.dims();
    json levels = json::array();
    for (const CohomologyLevel& lv : ce.levels()) {
      json e;
      e["q"] = lv.q;
      e["cocycles"] = lv.dim_cocycles;
      e["coboundaries"] = lv.dim_coboundaries;
      e["dim"] = lv.dim;
      json gens = json::array();
      for (size_t i = 0; i < lv.representatives.size(); ++i)
        gens.push_back(json_form(ce.representative_form(lv.q, i)));
      e["generators"] = std::move(gens);
      levels.push_back(std::move(e));
    }
    jr["levels"] = std::move(levels);
    rep.data[rname] = std::move(jr);

    bool ok = true;
    for (size_t q = 0; q < L.dim(); ++q)
      ok = ok &&
           (ce_matrix(L, q + 1, rkind) * ce_matrix(L, q, rkind)).is_zero();
    rep.add("complex:" + rname, ok);
  }
}

// -------------------------------------------------------------------- cech

void run_cech(const Scenario& sc, uint64_t seed, Report& rep) {
  const GluingData& gd = need_gluing(sc);
  size_t m = gd.nerve.m, n = gd.algebra.dim();
  size_t maxdim = gd.nerve.max_dim();
  Rng rng(seed);

  auto random_cochain = [&](size_t p, ValueKind kind) {
    CechCochain c;
    c.p = p;
    c.kind = kind;
    for (const auto& sig : gd.nerve.simplices_of_dim(p)) {
      TlaForm f = rng.form(m, n, kind, rng.below(3));
      if (!f.is_zero()) c.comps[sig] = f;
    }
    return c;
  };

  uint64_t count = param_uint(sc, "count", 10);
  bool ok2 = true, okc = true;
  for (uint64_t k = 0; k < count; ++k) {
    size_t p = maxdim == 0 ? 0 : rng.below(maxdim);
    ValueKind kind = k % 2 ? ValueKind::kAlgebra : ValueKind::kScalar;
    CechCochain c = random_cochain(p, kind);
    ok2 = ok2 && cech_delta(gd, cech_delta(gd, c)).is_zero();
    okc = okc && cochain_equal(gd, cochain_total_diff(gd, cech_delta(gd, c)),
                               cech_delta(gd, cochain_total_diff(gd, c)));
  }
  rep.add("delta-squared", ok2, counted(count, "generated cochains"));
  rep.add("delta-diff-commute", okc, counted(count, "generated cochains"));

  if (maxdim >= 1) {
    uint64_t ccount = param_uint(sc, "cocycles", 10);
    bool okh = true;
    for (uint64_t k = 0; k < ccount; ++k) {
      size_t p = 1 + rng.below(maxdim);
      CechCochain c = cech_delta(gd, random_cochain(p - 1, ValueKind::kAlgebra));
      CechCochain tau = delta_homotopy(gd, c);
      okh = okh && cochain_equal(gd, cech_delta(gd, tau), c);
    }
    rep.add("homotopy", okh, counted(ccount, "generated cocycles"));
  }

  bool okx = true;
  for (uint64_t k = 0; k < 5; ++k) {
    TlaForm f0 = rng.form(m, n, ValueKind::kAlgebra, rng.below(m + n + 1));
    LocalFamily fam = propagate_family(gd, 0, f0);
    bool global = check_global_form(gd, fam).ok();
    bool closed =
        cech_delta(gd, cochain_from_family(gd, ValueKind::kAlgebra, fam))
            .is_zero();
    okx = okx && global == closed;
  }
  rep.add("exactness-iff", okx, "5 propagated families");

  rep.data["e1"] = e1_page(gd).dims;
  rep.data["e2"] = e2_page(gd).dims;
}

// --------------------------------------------------------------- atiyah-gen

void run_atiyah_gen(const Scenario& sc, Report& rep) {
  if (!sc.transitions)
    throw std::invalid_argument(sc.path +
                                ": this command needs a transitions section");
  const GluingData& gd = *sc.gluing;
  CheckReport cr = verify_cocycles(gd);
  rep.add("cocycles", cr.ok(), cr.ok() ? "" : cr.str());
  rep.data["model"] = sc.transitions_model;
  rep.data["rep_dim"] = sc.transitions->rep_dim;
  rep.data["gluing"] = json_gluing(gd);
  Scenario out;
  out.algebra = sc.algebra;
  out.nerve = sc.nerve;
  out.gluing = sc.gluing;
  rep.data["scenario"] = json_scenario(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus on locally trivialized transitive Lie "
               "algebroids"};
  app.require_subcommand(1);
  std::string scenario_path, out_path;
  uint64_t seed = 0;
  const std::vector<std::pair<std::string, std::string>> specs = {
      {"verify",
       "check cocycles, global forms, connections, metric transitions"},
      {"diff", "apply the total differential and audit nilpotency"},
      {"hodge", "star operator, double-star audit, scalar products"},
      {"integrate", "inner, full, and traced integration"},
      {"lie-cohomology", "generator-complex cohomology tables"},
      {"cech", "nerve differential, contracting homotopy, page tables"},
      {"atiyah-gen", "generate gluing data from transition matrices"}};
  for (const auto& [name, desc] : specs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--scenario", scenario_path, "scenario file (JSON)")
        ->required();
    sub->add_option("--out", out_path, "also write the report to this file");
    sub->add_option("--seed", seed, "seed for generated forms");
  }
  CLI11_PARSE(app, argc, argv);

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Scenario sc = load_scenario(scenario_path);
    Report rep;
    bool seeded = cmd == "diff" || cmd == "hodge" || cmd == "cech";
    if (cmd == "verify") run_verify(sc, rep);
    if (cmd == "diff") run_diff(sc, seed, rep);
    if (cmd == "hodge") run_hodge(sc, seed, rep);
    if (cmd == "integrate") run_integrate(sc, rep);
    if (cmd == "lie-cohomology") run_lie_cohomology(sc, rep);
    if (cmd == "cech") run_cech(sc, seed, rep);
    if (cmd == "atiyah-gen") run_atiyah_gen(sc, rep);

    json report;
    report["command"] = cmd;
    report["scenario"] = scenario_path;
    if (seeded) report["seed"] = seed;
    report["checks"] = rep.checks;
    report["data"] = rep.data;
    report["status"] = rep.all_pass ? "pass" : "fail";
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      out << text;
      if (!out)
        throw std::invalid_argument(out_path + ": cannot write report");
    }
    return rep.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
