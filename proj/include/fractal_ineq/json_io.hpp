#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fractal_ineq/certificate.hpp"
#include "fractal_ineq/evaluable.hpp"
#include "fractal_ineq/ineq_report.hpp"
#include "fractal_ineq/sets_epigraph.hpp"

namespace fractal_ineq {

using ojson = nlohmann::ordered_json;

namespace jio {

// Parse errors carry the path of the offending field ("pieces[0].if.op").
[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw input_error(path + ": " + what);
}

inline const ojson& field(const ojson& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

inline double num(const ojson& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline bool boolean(const ojson& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

inline std::string str(const ojson& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline const ojson& arr(const ojson& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline uint64_t seed_value(const ojson& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<uint64_t>();
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0) fail(path, "seed must be nonnegative");
    return static_cast<uint64_t>(v);
  }
  fail(path, "expected an integer seed");
}

inline std::vector<double> num_vector(const ojson& j, const std::string& path) {
  arr(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(num(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Non-finite values have no JSON literal; they serialize as null.
inline ojson jnum(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

inline ojson jopt(const std::optional<double>& v) {
  return v ? jnum(*v) : ojson(nullptr);
}

}  // namespace jio

// ---------------------------------------------------------------------------
// Functions
// ---------------------------------------------------------------------------

inline ojson poly_to_json(const FractalPoly& p) {
  ojson terms = ojson::array();
  for (const auto& t : p.terms) terms.push_back(ojson::array({t.coeff, t.k}));
  return ojson{{"type", "fpoly"}, {"alpha", p.alpha}, {"terms", std::move(terms)}};
}

inline FractalPoly poly_from_json(const ojson& j, const std::string& path = "fpoly") {
  const double alpha = jio::num(jio::field(j, "alpha", path), path + ".alpha");
  const auto& terms = jio::arr(jio::field(j, "terms", path), path + ".terms");
  std::vector<FractalPoly::Term> out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = path + ".terms[" + std::to_string(i) + "]";
    const auto& t = jio::arr(terms[i], tp);
    if (t.size() != 2) jio::fail(tp, "expected [coeff, k]");
    out.push_back({jio::num(t[0], tp + "[0]"), jio::num(t[1], tp + "[1]")});
  }
  return FractalPoly(alpha, std::move(out));
}

namespace jio {

inline std::string guard_op_name(Guard::Op op) {
  switch (op) {
    case Guard::Op::Lt: return "<";
    case Guard::Op::Le: return "<=";
    case Guard::Op::Gt: return ">";
    case Guard::Op::Ge: return ">=";
  }
  return "<";
}

inline Guard::Op guard_op_parse(const std::string& s, const std::string& path) {
  if (s == "<") return Guard::Op::Lt;
  if (s == "<=") return Guard::Op::Le;
  if (s == ">") return Guard::Op::Gt;
  if (s == ">=") return Guard::Op::Ge;
  fail(path, "unknown comparison '" + s + "' (expected <, <=, >, >=)");
}

// Guards use 1-based variable indices on the wire.
inline ojson guard_to_json(const Guard& g) {
  return ojson{{"var", g.var + 1}, {"op", guard_op_name(g.op)}, {"c", g.c}};
}

inline Guard guard_from_json(const ojson& j, const std::string& path) {
  const ojson& v = field(j, "var", path);
  if (!v.is_number_integer()) fail(path + ".var", "expected an integer");
  const long long var = v.get<long long>();
  if (var < 1 || var > 3) fail(path + ".var", "variable index out of range (1-based)");
  Guard g;
  g.var = static_cast<int>(var - 1);
  g.op = guard_op_parse(str(field(j, "op", path), path + ".op"), path + ".op");
  g.c = num(field(j, "c", path), path + ".c");
  return g;
}

}  // namespace jio

inline ojson fn_to_json(const EvaluableFn& fn);

inline ojson fn_to_json(const FnPtr& fn) { return fn_to_json(*fn); }

inline ojson fn_to_json(const EvaluableFn& fn) {
  return std::visit(
      [](const auto& n) -> ojson {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PolyNode>) {
          return poly_to_json(n.poly);
        } else if constexpr (std::is_same_v<T, MonoNode>) {
          return ojson{{"type", "fmono"}, {"coeff", n.coeff}, {"exps", n.exps}};
        } else if constexpr (std::is_same_v<T, CPolyNode>) {
          return ojson{{"type", "cpoly"}, {"coeffs", n.coeffs}};
        } else if constexpr (std::is_same_v<T, PiecewiseNode>) {
          ojson pieces = ojson::array();
          for (const auto& p : n.pieces) {
            pieces.push_back(
                ojson{{"if", jio::guard_to_json(p.guard)}, {"fn", fn_to_json(p.fn)}});
          }
          return ojson{{"type", "piecewise"}, {"pieces", std::move(pieces)}};
        } else if constexpr (std::is_same_v<T, AffinePreNode>) {
          return ojson{{"type", "affinepre"},
                       {"fn", fn_to_json(n.fn)},
                       {"scale", n.scale},
                       {"offset", n.offset}};
        } else if constexpr (std::is_same_v<T, WSumNode>) {
          ojson terms = ojson::array();
          for (const auto& s : n.summands) {
            terms.push_back(ojson{{"weight", s.w}, {"fn", fn_to_json(s.fn)}});
          }
          return ojson{{"type", "wsum"}, {"terms", std::move(terms)}};
        } else if constexpr (std::is_same_v<T, SupFamilyNode>) {
          ojson fns = ojson::array();
          for (const auto& f : n.fns) fns.push_back(fn_to_json(f));
          return ojson{{"type", "sup"}, {"fns", std::move(fns)}};
        } else {
          return ojson{{"type", "compose"},
                       {"outer", fn_to_json(n.outer)},
                       {"inner", fn_to_json(n.inner)}};
        }
      },
      fn.node);
}

inline FnPtr fn_from_json(const ojson& j, const std::string& path = "fn");

namespace jio {

inline std::string type_of(const ojson& j, const std::string& path) {
  return str(field(j, "type", path), path + ".type");
}

}  // namespace jio

inline FnPtr fn_from_json(const ojson& j, const std::string& path) {
  const std::string type = jio::type_of(j, path);
  if (type == "fpoly") {
    return make_fn({PolyNode{poly_from_json(j, path)}});
  }
  if (type == "fmono") {
    MonoNode n;
    n.coeff = jio::num(jio::field(j, "coeff", path), path + ".coeff");
    n.exps = jio::num_vector(jio::field(j, "exps", path), path + ".exps");
    if (n.exps.empty() || n.exps.size() > 3) {
      jio::fail(path + ".exps", "expected 1 to 3 exponents");
    }
    return make_fn({std::move(n)});
  }
  if (type == "cpoly") {
    CPolyNode n;
    n.coeffs = jio::num_vector(jio::field(j, "coeffs", path), path + ".coeffs");
    if (n.coeffs.empty()) jio::fail(path + ".coeffs", "expected at least one coefficient");
    return make_fn({std::move(n)});
  }
  if (type == "piecewise") {
    const auto& pieces = jio::arr(jio::field(j, "pieces", path), path + ".pieces");
    if (pieces.empty()) jio::fail(path + ".pieces", "expected at least one piece");
    PiecewiseNode n;
    for (size_t i = 0; i < pieces.size(); ++i) {
      const std::string pp = path + ".pieces[" + std::to_string(i) + "]";
      n.pieces.push_back(
          {jio::guard_from_json(jio::field(pieces[i], "if", pp), pp + ".if"),
           fn_from_json(jio::field(pieces[i], "fn", pp), pp + ".fn")});
    }
    return make_fn({std::move(n)});
  }
  if (type == "affinepre") {
    AffinePreNode n;
    n.fn = fn_from_json(jio::field(j, "fn", path), path + ".fn");
    n.scale = jio::num(jio::field(j, "scale", path), path + ".scale");
    n.offset = jio::num(jio::field(j, "offset", path), path + ".offset");
    return make_fn({std::move(n)});
  }
  if (type == "wsum") {
    const auto& terms = jio::arr(jio::field(j, "terms", path), path + ".terms");
    if (terms.empty()) jio::fail(path + ".terms", "expected at least one summand");
    WSumNode n;
    for (size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = path + ".terms[" + std::to_string(i) + "]";
      const double w = jio::num(jio::field(terms[i], "weight", tp), tp + ".weight");
      if (!(w >= 0.0)) jio::fail(tp + ".weight", "weights must be >= 0");
      n.summands.push_back({w, fn_from_json(jio::field(terms[i], "fn", tp), tp + ".fn")});
    }
    return make_fn({std::move(n)});
  }
  if (type == "sup") {
    const auto& fns = jio::arr(jio::field(j, "fns", path), path + ".fns");
    if (fns.empty()) jio::fail(path + ".fns", "expected at least one member");
    SupFamilyNode n;
    for (size_t i = 0; i < fns.size(); ++i) {
      n.fns.push_back(fn_from_json(fns[i], path + ".fns[" + std::to_string(i) + "]"));
    }
    return make_fn({std::move(n)});
  }
  if (type == "compose") {
    ComposeNode n;
    n.outer = fn_from_json(jio::field(j, "outer", path), path + ".outer");
    n.inner = fn_from_json(jio::field(j, "inner", path), path + ".inner");
    if (fn_arity(*n.outer) != 1) jio::fail(path + ".outer", "outer must take one variable");
    return make_fn({std::move(n)});
  }
  jio::fail(path + ".type", "unknown function type '" + type + "'");
}

// ---------------------------------------------------------------------------
// E-maps
// ---------------------------------------------------------------------------

inline ojson emap_to_json(const EMap& e) {
  return std::visit(
      [&](const auto& m) -> ojson {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AffineMap>) {
          return ojson{{"type", "emap-affine"},
                       {"matrix", m.matrix},
                       {"offset", m.offset}};
        } else if constexpr (std::is_same_v<T, ComponentwiseMap>) {
          ojson fns = ojson::array();
          for (const auto& f : m.fns) fns.push_back(fn_to_json(f));
          return ojson{{"type", "emap-componentwise"}, {"fns", std::move(fns)}};
        } else {
          return ojson{{"type", "emap-identity"}, {"dim", e.dim}};
        }
      },
      e.map);
}

inline EMap emap_from_json(const ojson& j, const std::string& path = "emap") {
  const std::string type = jio::type_of(j, path);
  if (type == "emap-identity") {
    const ojson& d = jio::field(j, "dim", path);
    if (!d.is_number_integer()) jio::fail(path + ".dim", "expected an integer");
    const long long dim = d.get<long long>();
    if (dim < 1 || dim > 3) jio::fail(path + ".dim", "dimension must be 1, 2, or 3");
    return identity_emap(static_cast<int>(dim));
  }
  if (type == "emap-affine") {
    AffineMap m;
    const auto& rows = jio::arr(jio::field(j, "matrix", path), path + ".matrix");
    for (size_t i = 0; i < rows.size(); ++i) {
      m.matrix.push_back(
          jio::num_vector(rows[i], path + ".matrix[" + std::to_string(i) + "]"));
    }
    m.offset = jio::num_vector(jio::field(j, "offset", path), path + ".offset");
    const size_t n = m.offset.size();
    if (n < 1 || n > 3) jio::fail(path + ".offset", "dimension must be 1, 2, or 3");
    if (m.matrix.size() != n) jio::fail(path + ".matrix", "matrix rows must match offset");
    for (size_t i = 0; i < n; ++i) {
      if (m.matrix[i].size() != n) {
        jio::fail(path + ".matrix[" + std::to_string(i) + "]", "matrix must be square");
      }
    }
    return EMap{static_cast<int>(n), std::move(m)};
  }
  if (type == "emap-componentwise") {
    const auto& fns = jio::arr(jio::field(j, "fns", path), path + ".fns");
    if (fns.empty() || fns.size() > 3) {
      jio::fail(path + ".fns", "dimension must be 1, 2, or 3");
    }
    ComponentwiseMap m;
    for (size_t i = 0; i < fns.size(); ++i) {
      const std::string fp = path + ".fns[" + std::to_string(i) + "]";
      FnPtr f = fn_from_json(fns[i], fp);
      if (fn_arity(*f) != 1) jio::fail(fp, "componentwise maps take one-variable functions");
      m.fns.push_back(std::move(f));
    }
    return EMap{static_cast<int>(fns.size()), std::move(m)};
  }
  jio::fail(path + ".type", "unknown emap type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Regions
// ---------------------------------------------------------------------------

inline ojson region_to_json(const RegionSpec& r) {
  return std::visit(
      [&](const auto& reg) -> ojson {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          if (r.dim == 1) {
            return ojson{{"type", "interval"}, {"lo", reg.lo[0]}, {"hi", reg.hi[0]}};
          }
          return ojson{{"type", "box"}, {"lo", reg.lo}, {"hi", reg.hi}};
        } else if constexpr (std::is_same_v<T, SimplexRegion>) {
          return ojson{{"type", "simplex"}, {"verts", reg.verts}, {"closed", reg.closed}};
        } else {
          return ojson{{"type", "halfspaces"},
                       {"normals", reg.normals},
                       {"offsets", reg.offsets},
                       {"bbox", ojson{{"lo", reg.bbox.lo}, {"hi", reg.bbox.hi}}}};
        }
      },
      r.region);
}

inline RegionSpec region_from_json(const ojson& j, const std::string& path = "region") {
  const std::string type = jio::type_of(j, path);
  if (type == "interval") {
    return make_interval_region(jio::num(jio::field(j, "lo", path), path + ".lo"),
                                jio::num(jio::field(j, "hi", path), path + ".hi"));
  }
  if (type == "box") {
    return make_box(jio::num_vector(jio::field(j, "lo", path), path + ".lo"),
                    jio::num_vector(jio::field(j, "hi", path), path + ".hi"));
  }
  if (type == "simplex") {
    const auto& vj = jio::arr(jio::field(j, "verts", path), path + ".verts");
    std::vector<Point> verts;
    for (size_t i = 0; i < vj.size(); ++i) {
      verts.push_back(jio::num_vector(vj[i], path + ".verts[" + std::to_string(i) + "]"));
    }
    bool closed = true;
    if (auto it = j.find("closed"); it != j.end()) {
      closed = jio::boolean(*it, path + ".closed");
    }
    return make_simplex(std::move(verts), closed);
  }
  if (type == "halfspaces") {
    HalfspacesRegion reg;
    const auto& nj = jio::arr(jio::field(j, "normals", path), path + ".normals");
    for (size_t i = 0; i < nj.size(); ++i) {
      reg.normals.push_back(
          jio::num_vector(nj[i], path + ".normals[" + std::to_string(i) + "]"));
    }
    reg.offsets = jio::num_vector(jio::field(j, "offsets", path), path + ".offsets");
    if (reg.normals.empty() || reg.normals.size() != reg.offsets.size()) {
      jio::fail(path + ".offsets", "normals and offsets must pair up");
    }
    const std::string bp = path + ".bbox";
    const ojson& bj = jio::field(j, "bbox", path);
    reg.bbox.lo = jio::num_vector(jio::field(bj, "lo", bp), bp + ".lo");
    reg.bbox.hi = jio::num_vector(jio::field(bj, "hi", bp), bp + ".hi");
    const size_t n = reg.bbox.lo.size();
    if (n < 1 || n > 3 || reg.bbox.hi.size() != n) jio::fail(bp, "bad bounding box");
    for (const auto& nrm : reg.normals) {
      if (nrm.size() != n) jio::fail(path + ".normals", "normal dimension mismatch");
    }
    for (size_t i = 0; i < n; ++i) {
      if (!(reg.bbox.lo[i] < reg.bbox.hi[i])) jio::fail(bp, "bbox lo must be < hi");
    }
    return RegionSpec{static_cast<int>(n), std::move(reg)};
  }
  jio::fail(path + ".type", "unknown region type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Lifted regions
// ---------------------------------------------------------------------------

inline ojson lifted_to_json(const LiftedRegion& s) {
  ojson j{{"base", region_to_json(s.base)}};
  std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, LiftedRegion::Epigraph>) {
          j["lift"] = "epigraph";
          j["fn"] = fn_to_json(h.fn);
        } else if constexpr (std::is_same_v<T, LiftedRegion::RHalfspace>) {
          j["lift"] = "r-halfspace";
          j["min_r"] = h.min_r;
        } else {
          j["lift"] = "product";
          j["lo"] = h.lo;
          j["hi"] = h.hi;
        }
      },
      s.height);
  return j;
}

inline LiftedRegion lifted_from_json(const ojson& j, const std::string& path = "set") {
  LiftedRegion s{region_from_json(jio::field(j, "base", path), path + ".base"),
                 LiftedRegion::RHalfspace{0.0}};
  const std::string lift = jio::str(jio::field(j, "lift", path), path + ".lift");
  if (lift == "epigraph") {
    s.height = LiftedRegion::Epigraph{fn_from_json(jio::field(j, "fn", path), path + ".fn")};
  } else if (lift == "r-halfspace") {
    s.height =
        LiftedRegion::RHalfspace{jio::num(jio::field(j, "min_r", path), path + ".min_r")};
  } else if (lift == "product") {
    const double lo = jio::num(jio::field(j, "lo", path), path + ".lo");
    const double hi = jio::num(jio::field(j, "hi", path), path + ".hi");
    if (!(lo < hi)) jio::fail(path + ".hi", "product interval needs lo < hi");
    s.height = LiftedRegion::ProductInterval{lo, hi};
  } else {
    jio::fail(path + ".lift", "unknown lift '" + lift + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Certificates and reports
// ---------------------------------------------------------------------------

inline ojson certificate_to_json(const Certificate& c) {
  ojson j;
  j["status"] = c.status == CertStatus::Counterexample ? "counterexample"
                                                       : "no-counterexample-found";
  if (c.witness) {
    ojson w;
    w["y1"] = c.witness->y1;
    w["y2"] = c.witness->y2;
    w["eta"] = jio::jopt(c.witness->eta);
    w["lhs"] = jio::jnum(c.witness->lhs);
    w["rhs"] = jio::jnum(c.witness->rhs);
    w["violation"] = jio::jnum(c.witness->violation);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["budget"] = ojson{{"grid", c.budget.grid},
                      {"samples", c.budget.samples},
                      {"seed", c.budget.seed}};
  j["seed"] = c.seed;
  j["violation"] = c.witness ? jio::jnum(c.witness->violation) : ojson(nullptr);
  return j;
}

inline Certificate certificate_from_json(const ojson& j, const std::string& path = "certificate") {
  Certificate c;
  const std::string status = jio::str(jio::field(j, "status", path), path + ".status");
  if (status == "counterexample") {
    c.status = CertStatus::Counterexample;
  } else if (status == "no-counterexample-found") {
    c.status = CertStatus::NoCounterexampleFound;
  } else {
    jio::fail(path + ".status", "unknown status '" + status + "'");
  }
  const ojson& bj = jio::field(j, "budget", path);
  const std::string bp = path + ".budget";
  c.budget.grid = static_cast<int>(jio::num(jio::field(bj, "grid", bp), bp + ".grid"));
  c.budget.samples =
      static_cast<long long>(jio::num(jio::field(bj, "samples", bp), bp + ".samples"));
  c.budget.seed = jio::seed_value(jio::field(bj, "seed", bp), bp + ".seed");
  c.budget.validate();
  c.seed = jio::seed_value(jio::field(j, "seed", path), path + ".seed");
  const ojson& wj = jio::field(j, "witness", path);
  if (!wj.is_null()) {
    const std::string wp = path + ".witness";
    Witness w;
    w.y1 = jio::num_vector(jio::field(wj, "y1", wp), wp + ".y1");
    w.y2 = jio::num_vector(jio::field(wj, "y2", wp), wp + ".y2");
    const ojson& ej = jio::field(wj, "eta", wp);
    if (!ej.is_null()) w.eta = jio::num(ej, wp + ".eta");
    w.lhs = jio::num(jio::field(wj, "lhs", wp), wp + ".lhs");
    w.rhs = jio::num(jio::field(wj, "rhs", wp), wp + ".rhs");
    w.violation = jio::num(jio::field(wj, "violation", wp), wp + ".violation");
    c.witness = std::move(w);
  }
  if (c.status == CertStatus::Counterexample && !c.witness) {
    jio::fail(path + ".witness", "counterexample status requires a witness");
  }
  return c;
}

inline ojson report_to_json(const IneqReport& rep) {
  ojson j;
  j["label"] = rep.label;
  j["alpha"] = jio::jnum(rep.alpha);
  j["s"] = jio::jopt(rep.s);
  j["p1"] = jio::jopt(rep.p1);
  j["p2"] = jio::jopt(rep.p2);
  j["interval"] = ojson::array({rep.lo, rep.hi});
  j["lhs"] = jio::jnum(rep.lhs);
  j["middle"] = jio::jopt(rep.middle);
  j["rhs"] = jio::jnum(rep.rhs);
  ojson links = ojson::array();
  for (const auto& l : rep.links) {
    links.push_back(ojson{{"name", l.name},
                          {"satisfied", l.satisfied},
                          {"slack", jio::jnum(l.slack)}});
  }
  j["links"] = std::move(links);
  j["notes"] = rep.notes;
  return j;
}

namespace jio {

// CSV cells reuse the JSON number formatting so both formats agree digit for
// digit.
inline std::string csv_num(double v) { return jnum(v).dump(); }

inline std::string csv_opt(const std::optional<double>& v) {
  return v ? csv_num(*v) : std::string();
}

}  // namespace jio

inline std::string report_csv_header() {
  return "label,alpha,s,p1,p2,lo,hi,lhs,middle,rhs,link,satisfied,slack,notes";
}

inline std::string report_to_csv(const IneqReport& rep, bool header = true) {
  std::string notes;
  for (const auto& n : rep.notes) {
    if (!notes.empty()) notes += ';';
    notes += n;
  }
  std::string prefix = rep.label + "," + jio::csv_num(rep.alpha) + "," +
                       jio::csv_opt(rep.s) + "," + jio::csv_opt(rep.p1) + "," +
                       jio::csv_opt(rep.p2) + "," + jio::csv_num(rep.lo) + "," +
                       jio::csv_num(rep.hi) + "," + jio::csv_num(rep.lhs) + "," +
                       jio::csv_opt(rep.middle) + "," + jio::csv_num(rep.rhs);
  std::string out;
  if (header) out = report_csv_header() + "\n";
  if (rep.links.empty()) {
    out += prefix + ",,," + notes + "\n";
    return out;
  }
  for (const auto& l : rep.links) {
    out += prefix + "," + l.name + "," + (l.satisfied ? "true" : "false") + "," +
           jio::csv_num(l.slack) + "," + notes + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inline fpoly mini-syntax: fpoly(α=0.5; x^{2α}), fpoly(a=1; 3*x^{2a}+0.5)
// ---------------------------------------------------------------------------

namespace jio {

inline void strip_spaces(std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  s = std::move(out);
}

inline void replace_all(std::string& s, std::string_view from, std::string_view to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

inline double parse_real(const std::string& s, size_t& pos, const char* what) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(v)) {
    fail("fpoly", std::string("expected a ") + what + " at '" + s.substr(pos) + "'");
  }
  pos += static_cast<size_t>(end - begin);
  return v;
}

inline bool starts_real(const std::string& s, size_t pos) {
  if (pos >= s.size()) return false;
  const char c = s[pos];
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
}

}  // namespace jio

inline FractalPoly poly_from_inline(const std::string& text) {
  std::string s = text;
  jio::strip_spaces(s);
  jio::replace_all(s, "\xce\xb1", "a");  // UTF-8 alpha
  jio::replace_all(s, "alpha=", "a=");
  if (s.size() < 8 || s.substr(0, 6) != "fpoly(" || s.back() != ')') {
    jio::fail("fpoly", "expected fpoly(a=<alpha>; <terms>)");
  }
  s = s.substr(6, s.size() - 7);
  const size_t semi = s.find(';');
  if (semi == std::string::npos) jio::fail("fpoly", "missing ';' after the alpha clause");
  std::string head = s.substr(0, semi);
  std::string body = s.substr(semi + 1);
  if (head.size() < 3 || head.substr(0, 2) != "a=") {
    jio::fail("fpoly", "alpha clause must be a=<real>");
  }
  size_t hp = 2;
  const double alpha = jio::parse_real(head, hp, "real alpha");
  if (hp != head.size()) jio::fail("fpoly", "trailing characters after alpha");
  if (!(alpha > 0.0) || alpha > 1.0) jio::fail("fpoly", "alpha must lie in (0,1]");
  if (body.empty()) jio::fail("fpoly", "empty term list");

  std::vector<FractalPoly::Term> terms;
  size_t pos = 0;
  while (pos < body.size()) {
    double sign = 1.0;
    if (body[pos] == '+' || body[pos] == '-') {
      if (body[pos] == '-') sign = -1.0;
      ++pos;
    } else if (!terms.empty()) {
      jio::fail("fpoly", "expected '+' or '-' before '" + body.substr(pos) + "'");
    }
    double coeff = 1.0;
    bool saw_coeff = false;
    if (jio::starts_real(body, pos)) {
      coeff = jio::parse_real(body, pos, "coefficient");
      saw_coeff = true;
      if (pos < body.size() && body[pos] == '*') ++pos;
    }
    double k = 0.0;
    bool saw_x = false;
    if (pos < body.size() && body[pos] == 'x') {
      saw_x = true;
      ++pos;
      if (pos < body.size() && body[pos] == '^') {
        ++pos;
        if (pos >= body.size() || body[pos] != '{') {
          jio::fail("fpoly", "exponent must be braced, e.g. x^{2a}");
        }
        ++pos;
        const size_t close = body.find('}', pos);
        if (close == std::string::npos) jio::fail("fpoly", "unterminated exponent brace");
        std::string ex = body.substr(pos, close - pos);
        pos = close + 1;
        if (!ex.empty() && ex.back() == 'a') {
          ex.pop_back();
          if (ex.empty()) {
            k = 1.0;
          } else {
            if (!ex.empty() && ex.back() == '*') ex.pop_back();
            size_t ep = 0;
            k = jio::parse_real(ex, ep, "exponent multiple");
            if (ep != ex.size()) jio::fail("fpoly", "bad exponent '" + ex + "a}'");
          }
        } else {
          // A bare power means the total exponent: x^{p} = x^{(p/alpha)*a}.
          size_t ep = 0;
          const double p = jio::parse_real(ex, ep, "exponent");
          if (ep != ex.size()) jio::fail("fpoly", "bad exponent '" + ex + "'");
          k = p / alpha;
        }
      } else {
        k = 1.0 / alpha;  // plain x is total power 1
      }
    }
    if (!saw_x && !saw_coeff) {
      jio::fail("fpoly", "expected a term at '" + body.substr(pos) + "'");
    }
    terms.push_back({sign * coeff, saw_x ? k : 0.0});
  }
  return FractalPoly(alpha, std::move(terms));
}

// Accepts either the inline mini-syntax or a JSON object (as text).
inline FnPtr fn_from_text(const std::string& text, const std::string& path = "fn") {
  std::string lead = text;
  jio::strip_spaces(lead);
  if (lead.rfind("fpoly(", 0) == 0) {
    return fn_from_poly(poly_from_inline(text));
  }
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded()) jio::fail(path, "neither fpoly(...) syntax nor valid JSON");
  return fn_from_json(j, path);
}

// ---------------------------------------------------------------------------
// Config hashing (FNV-1a 64) for drift detection in stored reports.
// ---------------------------------------------------------------------------

inline uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string config_hash(const ojson& canonical_config) {
  const uint64_t h = fnv1a64(canonical_config.dump());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace fractal_ineq
