// Command-line front end: parses the function/E-map/region DSL, dispatches
// the library checks, and emits deterministic JSON or CSV reports.
//
// Exit codes: 0 all links satisfied / no counterexample, 1 counterexample or
// violated link, 2 invalid input, 3 numerical failure or unsupported family.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fractal_ineq/acceptance.hpp"
#include "fractal_ineq/convexity.hpp"
#include "fractal_ineq/hh_bounds.hpp"
#include "fractal_ineq/json_io.hpp"
#include "fractal_ineq/means.hpp"
#include "fractal_ineq/sets_epigraph.hpp"

namespace fi = fractal_ineq;
using fi::ojson;

namespace {

struct CommonOpts {
  std::string format = "json";
  std::string out_path;
  double tolerance = 1e-9;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out_path, "Write the report to this path instead of stdout");
  cmd->add_option("--tolerance", c.tolerance, "Link tolerance");
}

void write_text(const CommonOpts& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream os(c.out_path, std::ios::binary);
  if (!os) throw fi::input_error("cannot open output path " + c.out_path);
  os << text;
}

void emit_json(const CommonOpts& c, const ojson& payload) {
  write_text(c, payload.dump(2) + "\n");
}

// Spec values are inline text or a path to a file holding the text.
std::string slurp_if_path(const std::string& value) {
  if (value.empty() || value[0] == '{' || value[0] == '[') return value;
  std::ifstream is(value, std::ios::binary);
  if (!is) return value;
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ojson parse_json_spec(const std::string& value, const std::string& path) {
  const auto j = ojson::parse(slurp_if_path(value), nullptr, false);
  if (j.is_discarded()) throw fi::input_error(path + ": malformed JSON");
  return j;
}

fi::FnPtr fn_from_spec(const std::string& value) {
  return fi::fn_from_text(slurp_if_path(value));
}

// The poly-based commands need the coefficient form, not just an evaluator.
fi::FractalPoly poly_from_spec(const std::string& value) {
  const std::string text = slurp_if_path(value);
  std::string head = text;
  fi::jio::strip_spaces(head);
  if (head.rfind("fpoly(", 0) == 0) return fi::poly_from_inline(text);
  const ojson j = parse_json_spec(text, "fn");
  if (!j.is_object() || fi::jio::type_of(j, "fn") != "fpoly") {
    throw fi::input_error("fn: this command requires an fpoly function");
  }
  return fi::poly_from_json(j, "fn");
}

fi::RegionSpec region_from_spec(const std::string& value, bool open_simplex) {
  ojson j = parse_json_spec(value, "region");
  if (open_simplex && j.is_object() && j.value("type", "") == "simplex" &&
      !j.contains("closed")) {
    j["closed"] = false;
  }
  return fi::region_from_json(j, "region");
}

// The CLI tolerance governs link classification uniformly: slack >= -10 tol.
void reclassify_links(fi::IneqReport& rep, double tol) {
  if (!(tol > 0.0)) throw fi::input_error("tolerance must be > 0");
  rep.tolerance = tol;
  for (auto& l : rep.links) l.satisfied = l.slack >= -10.0 * tol;
}

int emit_report(const CommonOpts& c, const char* command, const ojson& config,
                fi::IneqReport rep) {
  reclassify_links(rep, c.tolerance);
  if (c.format == "csv") {
    write_text(c, fi::report_to_csv(rep));
  } else {
    ojson payload;
    payload["schema"] = "1";
    payload["command"] = command;
    payload["config_hash"] = fi::config_hash(config);
    payload["report"] = fi::report_to_json(rep);
    emit_json(c, payload);
  }
  return rep.all_satisfied() ? 0 : 1;
}

std::string point_csv(const fi::Point& p) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ';';
    out += fi::jio::csv_num(p[i]);
  }
  return out;
}

int emit_certificate(const CommonOpts& c, const std::string& kind, const ojson& config,
                     const fi::Certificate& cert) {
  if (c.format == "csv") {
    std::string text = "status,seed,violation,y1,y2,eta,lhs,rhs\n";
    const bool ce = cert.status == fi::CertStatus::Counterexample;
    text += ce ? "counterexample" : "no-counterexample-found";
    text += "," + std::to_string(cert.seed);
    if (cert.witness) {
      const auto& w = *cert.witness;
      text += "," + fi::jio::csv_num(w.violation) + "," + point_csv(w.y1) + "," +
              point_csv(w.y2) + "," + fi::jio::csv_opt(w.eta) + "," +
              fi::jio::csv_num(w.lhs) + "," + fi::jio::csv_num(w.rhs);
    } else {
      text += ",,,,,,";
    }
    write_text(c, text + "\n");
  } else {
    ojson payload;
    payload["schema"] = "1";
    payload["command"] = "classify";
    payload["kind"] = kind;
    payload["config_hash"] = fi::config_hash(config);
    payload["certificate"] = fi::certificate_to_json(cert);
    emit_json(c, payload);
  }
  return cert.status == fi::CertStatus::Counterexample ? 1 : 0;
}

struct ClassifyOpts {
  CommonOpts common;
  std::string kind;
  std::string fn_text;
  std::string emap_text;
  std::string region_text;
  std::vector<double> domain;
  std::optional<double> alpha;
  double s = 1.0;
  fi::Budget budget;
  bool even_power = false;
  bool open_simplex = false;
};

std::optional<double> fn_poly_alpha(const fi::FnPtr& fn) {
  if (!fn) return std::nullopt;
  if (const auto* p = std::get_if<fi::PolyNode>(&fn->node)) return p->poly.alpha;
  return std::nullopt;
}

int run_classify(const ClassifyOpts& o) {
  fi::ConvexityQuery q;
  if (o.kind == "generalized-convex") {
    q.tag = fi::ClassTag::GeneralizedConvex;
  } else if (o.kind == "s-convex-1") {
    q.tag = fi::ClassTag::SConvex1;
  } else if (o.kind == "s-convex-2") {
    q.tag = fi::ClassTag::SConvex2;
  } else if (o.kind == "generalized-quasiconvex") {
    q.tag = fi::ClassTag::GeneralizedQuasiconvex;
  } else if (o.kind == "E-convex-fn") {
    q.tag = fi::ClassTag::EConvexFn;
  } else if (o.kind == "gECF") {
    q.tag = fi::ClassTag::GECF;
  } else if (o.kind == "gE-quasiconvex") {
    q.tag = fi::ClassTag::GEQuasiconvex;
  } else if (o.kind == "E-convex-set") {
    q.tag = fi::ClassTag::EConvexSet;
  } else {
    throw fi::input_error("unknown kind " + o.kind);
  }

  if (!o.fn_text.empty()) q.fn = fn_from_spec(o.fn_text);
  std::optional<fi::EMap> emap;
  if (!o.emap_text.empty()) {
    emap = fi::emap_from_json(parse_json_spec(o.emap_text, "emap"), "emap");
  }
  q.emap = emap;

  if (!o.region_text.empty()) {
    q.region = region_from_spec(o.region_text, o.open_simplex);
  } else if (o.domain.size() == 2) {
    q.region = fi::make_interval_region(o.domain[0], o.domain[1]);
  } else {
    throw fi::input_error("classify requires --region or --domain lo hi");
  }

  // An fpoly input fixes alpha; an explicit flag must agree with it.
  const std::optional<double> poly_alpha = fn_poly_alpha(q.fn);
  q.alpha = o.alpha.value_or(poly_alpha.value_or(1.0));
  if (o.alpha && poly_alpha && *o.alpha != *poly_alpha) {
    std::ostringstream os;
    os << "--alpha " << *o.alpha << " conflicts with fpoly alpha " << *poly_alpha;
    throw fi::input_error(os.str());
  }
  q.s = o.s;
  q.budget = o.budget;
  q.tolerance = o.common.tolerance;
  q.even_power = o.even_power;

  ojson config;
  config["command"] = "classify";
  config["kind"] = o.kind;
  config["fn"] = q.fn ? fi::fn_to_json(q.fn) : ojson(nullptr);
  config["emap"] = q.emap ? fi::emap_to_json(*q.emap) : ojson(nullptr);
  config["region"] = fi::region_to_json(q.region);
  config["alpha"] = q.alpha;
  config["s"] = q.s;
  config["budget"] = ojson{{"grid", q.budget.grid},
                           {"samples", q.budget.samples},
                           {"seed", q.budget.seed}};
  config["tolerance"] = q.tolerance;
  config["even_power"] = q.even_power;

  fi::Certificate cert;
  switch (q.tag) {
    case fi::ClassTag::GeneralizedConvex:
      cert = fi::check_generalized_convex(q);
      break;
    case fi::ClassTag::SConvex1:
      cert = fi::check_s_convex(q, 1);
      break;
    case fi::ClassTag::SConvex2:
      cert = fi::check_s_convex(q, 2);
      break;
    case fi::ClassTag::GeneralizedQuasiconvex:
      cert = fi::check_quasiconvex(q, fi::QuasiVariant::Plain);
      break;
    case fi::ClassTag::EConvexFn:
      cert = fi::check_E_convex_fn(q);
      break;
    case fi::ClassTag::GECF:
      cert = fi::check_gECF(q);
      break;
    case fi::ClassTag::GEQuasiconvex:
      cert = fi::check_quasiconvex(q, fi::QuasiVariant::E);
      break;
    case fi::ClassTag::EConvexSet:
      if (!q.emap) throw fi::input_error("E-convex-set requires --emap");
      cert = fi::check_E_convex_set(q.region, *q.emap, q.budget, q.tolerance, q.alpha,
                                    q.even_power);
      break;
  }
  return emit_certificate(o.common, o.kind, config, cert);
}

struct HHOpts {
  CommonOpts common;
  std::string eq;
  std::string fn_text;
  std::vector<double> interval;
  double s = 1.0;
  std::optional<double> alpha;
};

fi::Interval interval_from(const std::vector<double>& v, const char* flag) {
  if (v.size() != 2) throw fi::input_error(std::string(flag) + " requires lo hi");
  return fi::Interval(v[0], v[1]);
}


void check_alpha_agreement(const std::optional<double>& flag_alpha, double poly_alpha) {
  if (flag_alpha && *flag_alpha != poly_alpha) {
    std::ostringstream os;
    os << "--alpha " << *flag_alpha << " conflicts with fpoly alpha " << poly_alpha;
    throw fi::input_error(os.str());
  }
}

int run_hh(const HHOpts& o) {
  const fi::Interval iv = interval_from(o.interval, "--interval");
  ojson config;
  config["command"] = "hh";
  config["eq"] = o.eq;
  config["interval"] = ojson::array({iv.lo, iv.hi});
  config["tolerance"] = o.common.tolerance;

  fi::IneqReport rep;
  if (o.eq == "8") {
    const fi::FractalPoly f = poly_from_spec(o.fn_text);
    check_alpha_agreement(o.alpha, f.alpha);
    config["fn"] = fi::poly_to_json(f);
    rep = fi::hh_generalized(f, iv);
  } else if (o.eq == "9") {
    const fi::FnPtr f = fn_from_spec(o.fn_text);
    config["fn"] = fi::fn_to_json(f);
    rep = fi::hh_classical(f, iv);
  } else if (o.eq == "10") {
    const fi::FnPtr f = fn_from_spec(o.fn_text);
    config["fn"] = fi::fn_to_json(f);
    config["s"] = o.s;
    rep = fi::hh_s_classical(f, iv, o.s);
  } else if (o.eq == "11") {
    const fi::FractalPoly f = poly_from_spec(o.fn_text);
    check_alpha_agreement(o.alpha, f.alpha);
    config["fn"] = fi::poly_to_json(f);
    config["s"] = o.s;
    rep = fi::hh_s_generalized(f, iv, o.s);
  } else if (o.eq == "lemma") {
    const fi::FractalPoly f = poly_from_spec(o.fn_text);
    check_alpha_agreement(o.alpha, f.alpha);
    config["fn"] = fi::poly_to_json(f);
    const auto [lhs, rhs] = fi::lemma_midpoint_identity(f, iv);
    rep.label = "lemma-some1";
    rep.alpha = f.alpha;
    rep.lo = iv.lo;
    rep.hi = iv.hi;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.notes.push_back("identity-check");
    rep.add_link("lhs<=rhs", lhs, rhs);
    rep.add_link("rhs<=lhs", rhs, lhs);
  } else {
    throw fi::input_error("--eq must be one of 8, 9, 10, 11, lemma");
  }
  return emit_report(o.common, "hh", config, std::move(rep));
}

struct BoundOpts {
  CommonOpts common;
  std::string name;
  std::string fn_text;
  std::vector<double> interval;
  double s = 1.0;
  double p1 = 2.0;
  double p2 = 2.0;
  std::optional<double> alpha;
};

int run_bound(const BoundOpts& o) {
  const fi::Interval iv = interval_from(o.interval, "--interval");
  ojson config;
  config["command"] = "bound";
  config["name"] = o.name;
  config["interval"] = ojson::array({iv.lo, iv.hi});
  config["s"] = o.s;
  config["tolerance"] = o.common.tolerance;

  fi::IneqReport rep;
  if (o.name == "premise") {
    const fi::FnPtr g = fn_from_spec(o.fn_text);
    const fi::AlphaCtx ctx(o.alpha.value_or(fn_poly_alpha(g).value_or(1.0)));
    config["fn"] = fi::fn_to_json(g);
    config["p2"] = o.p2;
    config["alpha"] = ctx.alpha;
    rep = fi::reverse_hh_premise(g, iv, o.s, o.p2, ctx);
    for (const auto& n : rep.notes) {
      if (n == "unsupported-family") {
        throw fi::unsupported_family_error(
            "premise integrals for this family have no closed form at alpha < 1");
      }
    }
  } else {
    const fi::FractalPoly f = poly_from_spec(o.fn_text);
    check_alpha_agreement(o.alpha, f.alpha);
    config["fn"] = fi::poly_to_json(f);
    if (o.name == "some3") {
      rep = fi::bound_some2(f, iv, o.s);
    } else if (o.name == "some7") {
      config["p1"] = o.p1;
      config["p2"] = o.p2;
      rep = fi::bound_some6(f, iv, o.s, fi::HolderPair(o.p1, o.p2));
    } else if (o.name == "corollary") {
      config["p1"] = o.p1;
      config["p2"] = o.p2;
      rep = fi::bound_corollary(f, iv, o.s, fi::HolderPair(o.p1, o.p2));
    } else if (o.name == "some9") {
      config["p1"] = o.p1;
      config["p2"] = o.p2;
      rep = fi::bound_some9(f, iv, o.s, fi::HolderPair(o.p1, o.p2));
    } else {
      throw fi::input_error("--name must be one of some3, some7, corollary, some9, premise");
    }
  }
  return emit_report(o.common, "bound", config, std::move(rep));
}

struct MeansOpts {
  CommonOpts common;
  int prop = 0;
  std::string mean_kind;
  double y1 = 1.0;
  double y2 = 2.0;
  double alpha = 1.0;
  double s = 1.0;
  double p1 = 2.0;
  double p2 = 2.0;
  std::optional<double> n;
};

int run_means(const MeansOpts& o) {
  const fi::AlphaCtx ctx(o.alpha);
  ojson config;
  config["command"] = "means";
  config["y1"] = o.y1;
  config["y2"] = o.y2;
  config["alpha"] = o.alpha;

  if (!o.mean_kind.empty()) {
    fi::MeanKind kind;
    if (o.mean_kind == "a-alpha") {
      kind = fi::MeanKind::AAlpha;
    } else if (o.mean_kind == "ln-alpha") {
      kind = fi::MeanKind::LnAlpha;
    } else if (o.mean_kind == "a-classical") {
      kind = fi::MeanKind::AClassical;
    } else if (o.mean_kind == "l-classical") {
      kind = fi::MeanKind::LClassical;
    } else if (o.mean_kind == "ln-classical") {
      kind = fi::MeanKind::LnClassical;
    } else {
      throw fi::input_error(
          "--mean must be one of a-alpha, ln-alpha, a-classical, l-classical, "
          "ln-classical");
    }
    config["mean"] = o.mean_kind;
    config["n"] = o.n ? ojson(*o.n) : ojson(nullptr);
    const double value = fi::mean(kind, o.y1, o.y2, o.n, ctx);
    if (o.common.format == "csv") {
      write_text(o.common, "kind,value\n" + o.mean_kind + "," +
                               fi::jio::csv_num(value) + "\n");
    } else {
      ojson payload;
      payload["schema"] = "1";
      payload["command"] = "means";
      payload["config_hash"] = fi::config_hash(config);
      payload["mean"] = ojson{{"kind", o.mean_kind}, {"value", fi::jio::jnum(value)}};
      emit_json(o.common, payload);
    }
    return 0;
  }

  config["s"] = o.s;
  config["prop"] = o.prop;
  fi::IneqReport rep;
  if (o.prop == 1) {
    rep = fi::prop_mean_bound_1(o.y1, o.y2, o.s, ctx);
  } else if (o.prop == 2) {
    config["p1"] = o.p1;
    config["p2"] = o.p2;
    rep = fi::prop_mean_bound_2(o.y1, o.y2, o.s, fi::HolderPair(o.p1, o.p2), ctx);
  } else {
    throw fi::input_error("means requires --prop 1, --prop 2, or --mean <kind>");
  }
  return emit_report(o.common, "means", config, std::move(rep));
}

struct WaveOpts {
  CommonOpts common;
  double alpha = 1.0;
  double x = 1.0;
  double t = 0.0;
};

int run_wave(const WaveOpts& o) {
  const fi::AlphaCtx ctx(o.alpha);
  const auto [lhs, rhs] = fi::wave_residual(o.x, o.t, ctx);
  ojson config;
  config["command"] = "wave";
  config["alpha"] = o.alpha;
  config["x"] = o.x;
  config["t"] = o.t;
  if (o.common.format == "csv") {
    write_text(o.common, "lhs,rhs\n" + fi::jio::csv_num(lhs) + "," +
                             fi::jio::csv_num(rhs) + "\n");
  } else {
    ojson payload;
    payload["schema"] = "1";
    payload["command"] = "wave";
    payload["config_hash"] = fi::config_hash(config);
    payload["wave"] = ojson{{"lhs", fi::jio::jnum(lhs)}, {"rhs", fi::jio::jnum(rhs)}};
    emit_json(o.common, payload);
  }
  return 0;
}

struct SuiteOpts {
  CommonOpts common;
  uint64_t seed = 42;
};

int run_suite(const SuiteOpts& o) {
  if (!(o.common.tolerance > 0.0)) throw fi::input_error("tolerance must be > 0");
  const auto results = fi::run_acceptance(o.seed);
  int fails = 0;
  for (const auto& r : results) fails += r.pass ? 0 : 1;

  if (o.common.format == "csv") {
    std::string text = "id,name,pass,details\n";
    for (const auto& r : results) {
      std::string details = r.details;
      for (auto& ch : details) {
        if (ch == ',') ch = ';';
      }
      text += std::to_string(r.id) + "," + r.name + "," +
              (r.pass ? "true" : "false") + "," + details + "\n";
    }
    write_text(o.common, text);
  } else {
    ojson config;
    config["command"] = "suite";
    config["seed"] = o.seed;
    config["tolerance"] = o.common.tolerance;
    ojson payload;
    payload["schema"] = "1";
    payload["command"] = "suite";
    payload["config_hash"] = fi::config_hash(config);
    payload["seed"] = o.seed;
    payload["criteria"] = fi::acceptance_to_json(results);
    payload["fails"] = fails;
    emit_json(o.common, payload);
  }
  return fails > 0 ? 1 : 0;
}

int emit_error(const char* code, const std::string& message, int exit_code) {
  ojson payload;
  payload["schema"] = "1";
  payload["error"] = ojson{{"code", code}, {"message", message}};
  std::fputs((payload.dump(2) + "\n").c_str(), stderr);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized-convexity and fractal inequality verification toolkit"};
  app.require_subcommand(1);

  ClassifyOpts cls;
  auto* classify = app.add_subcommand("classify", "Certify or refute a convexity class");
  classify->add_option("--kind", cls.kind, "Convexity class tag")->required();
  classify->add_option("--fn", cls.fn_text, "Function: inline fpoly(...), JSON, or a path");
  classify->add_option("--emap", cls.emap_text, "E-map JSON or path");
  classify->add_option("--region", cls.region_text, "Region JSON or path");
  classify->add_option("--domain", cls.domain, "Interval region lo hi")->expected(2);
  classify->add_option("--alpha", cls.alpha, "Fractal order in (0,1]");
  classify->add_option("--s", cls.s, "Order for the s-convex classes");
  classify->add_option("--grid", cls.budget.grid, "Grid density per axis");
  classify->add_option("--samples", cls.budget.samples, "Random sample count");
  classify->add_option("--seed", cls.budget.seed, "Search seed");
  classify->add_flag("--even-power", cls.even_power, "Even-power convention for negative bases");
  classify->add_flag("--open-simplex", cls.open_simplex,
                     "Parse simplex regions without a closed field as open");
  add_common(classify, cls.common);

  HHOpts hh;
  auto* hhc = app.add_subcommand("hh", "Evaluate a Hermite-Hadamard chain");
  hhc->add_option("--eq", hh.eq, "Chain id: 8, 9, 10, 11, or lemma")->required();
  hhc->add_option("--fn", hh.fn_text, "Function: inline fpoly(...), JSON, or a path")
      ->required();
  hhc->add_option("--interval", hh.interval, "Interval lo hi")->expected(2);
  hhc->add_option("--s", hh.s, "Order for the s-convex chains");
  hhc->add_option("--alpha", hh.alpha, "Must agree with the fpoly alpha when given");
  add_common(hhc, hh.common);

  BoundOpts bnd;
  auto* bndc = app.add_subcommand("bound", "Evaluate a midpoint-deviation bound");
  bndc->add_option("--name", bnd.name, "Bound id: some3, some7, corollary, some9, premise")
      ->required();
  bndc->add_option("--fn", bnd.fn_text, "Function: inline fpoly(...), JSON, or a path")
      ->required();
  bndc->add_option("--interval", bnd.interval, "Interval lo hi")->expected(2);
  bndc->add_option("--s", bnd.s, "Convexity order");
  bndc->add_option("--p1", bnd.p1, "Holder exponent p1");
  bndc->add_option("--p2", bnd.p2, "Holder exponent p2");
  bndc->add_option("--alpha", bnd.alpha, "Fractal order (premise; must agree otherwise)");
  add_common(bndc, bnd.common);

  MeansOpts mns;
  auto* mnsc = app.add_subcommand("means", "Mean values and mean-bound propositions");
  mnsc->add_option("--prop", mns.prop, "Proposition id 1 or 2");
  mnsc->add_option("--mean", mns.mean_kind, "Evaluate one mean instead of a proposition");
  mnsc->add_option("--y1", mns.y1, "Left endpoint (> 0)");
  mnsc->add_option("--y2", mns.y2, "Right endpoint (> 0)");
  mnsc->add_option("--alpha", mns.alpha, "Fractal order in (0,1]");
  mnsc->add_option("--s", mns.s, "Convexity order");
  mnsc->add_option("--p1", mns.p1, "Holder exponent p1");
  mnsc->add_option("--p2", mns.p2, "Holder exponent p2");
  mnsc->add_option("--n", mns.n, "Order for the ln means");
  add_common(mnsc, mns.common);

  WaveOpts wv;
  auto* wvc = app.add_subcommand("wave", "Residual pair of the claimed wave solution");
  wvc->add_option("--alpha", wv.alpha, "Fractal order in (0,1]")->required();
  wvc->add_option("--x", wv.x, "Space coordinate (> 0)")->required();
  wvc->add_option("--t", wv.t, "Time coordinate (>= 0)")->required();
  add_common(wvc, wv.common);

  SuiteOpts ste;
  auto* stec = app.add_subcommand("suite", "Run the full acceptance suite");
  stec->add_option("--seed", ste.seed, "Suite seed");
  add_common(stec, ste.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("invalid-input", e.what(), 2);
  }

  try {
    fi::worker_count();  // validate FRACTAL_INEQ_THREADS before dispatch
    if (classify->parsed()) return run_classify(cls);
    if (hhc->parsed()) return run_hh(hh);
    if (bndc->parsed()) return run_bound(bnd);
    if (mnsc->parsed()) return run_means(mns);
    if (wvc->parsed()) return run_wave(wv);
    if (stec->parsed()) return run_suite(ste);
    return emit_error("invalid-input", "no subcommand", 2);
  } catch (const fi::input_error& e) {
    return emit_error("invalid-input", e.what(), 2);
  } catch (const fi::eval_domain_error& e) {
    return emit_error("domain-error", e.what(), 2);
  } catch (const fi::unsupported_family_error& e) {
    return emit_error("unsupported-family", e.what(), 3);
  } catch (const fi::numeric_error& e) {
    return emit_error("numeric", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 3);
  }
}
