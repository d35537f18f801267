#include "fibercoh/session.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fibercoh/ratmap.hpp"

namespace fibercoh {

namespace {

using Json = nlohmann::ordered_json;

Degree to_degree(const DegreeLit& d, int rank) {
  if (static_cast<int>(d.c.size()) != rank)
    fail(ErrorCode::BadBigrading, "degree literal has " + std::to_string(d.c.size()) + " entries but the grading has rank " +
                                      std::to_string(rank));
  return rank == 1 ? Degree{d.c[0], 0} : Degree{d.c[0], d.c[1]};
}

Json degree_json(const Degree& d, int rank) {
  Json j = Json::array();
  for (int i = 0; i < rank; ++i) j.push_back(d[static_cast<std::size_t>(i)]);
  return j;
}

mpq_class evaluate_number(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::Neg: return -evaluate_number(e.args[0]);
    case Expr::Kind::Add: return evaluate_number(e.args[0]) + evaluate_number(e.args[1]);
    case Expr::Kind::Sub: return evaluate_number(e.args[0]) - evaluate_number(e.args[1]);
    case Expr::Kind::Mul: return evaluate_number(e.args[0]) * evaluate_number(e.args[1]);
    case Expr::Kind::Pow: {
      mpq_class r = 1, b = evaluate_number(e.args[0]);
      for (unsigned i = 0; i < e.exponent; ++i) r *= b;
      return r;
    }
    case Expr::Kind::Name: break;
  }
  fail(ErrorCode::InvalidArgument, "point value '" + format_expr(e) + "' is not a rational number");
}

Json opt_json(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json locus_json(const Locus& l) {
  Json j;
  Json gens = Json::array();
  for (const auto& g : l.generators) gens.push_back(g.to_string());
  j["generators"] = gens;
  j["empty"] = l.is_empty();
  j["radical"] = l.radical;
  j["provenance"] = l.provenance;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string degree_text(const Degree& d, int rank) {
  return rank == 1 ? std::to_string(d[0]) : "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + ")";
}

struct Output {
  Json body;
  std::string csv;
};

class Runner {
 public:
  Runner(const Session& s, const RunOptions& o) : s_(s), o_(o), rank_(s.ring()->grading_rank()) {}

  Output run(const Command& c) {
    switch (c.kind) {
      case Command::Kind::LocalCoh: return localcoh(c);
      case Command::Kind::Loci: return loci(c);
      case Command::Kind::Specialize: return specialize(c);
      case Command::Kind::RatMap: return ratmap(c);
      case Command::Kind::Invariants: return invariants(c);
      case Command::Kind::Harness: return harness(c);
      case Command::Kind::Betti: return betti(c);
    }
    fail(ErrorCode::Internal, "unknown command");
  }

 private:
  std::vector<Degree> window_of(const std::pair<DegreeLit, DegreeLit>& w) {
    Degree lo = to_degree(w.first, rank_), hi = to_degree(w.second, rank_);
    return degree_window(*s_.ring(), lo[0], hi[0], lo[1], hi[1]);
  }

  Output localcoh(const Command& c) {
    auto m = s_.module(c.target);
    auto fiber = s_.fiber(c.fiber);
    auto window = c.window ? window_of(*c.window) : default_cohomology_window(m, fiber);
    std::string route = c.route.empty() ? (s_.ring()->bigraded() ? "A" : "both") : c.route;
    CohomologyTable t = route == "A"   ? local_cohomology_dims_dualcomplex(m, window, fiber)
                        : route == "B" ? local_cohomology_dims_extdual(m, window, fiber)
                                       : cross_validate(m, window, fiber);
    Output out;
    out.body["module"] = c.target;
    out.body["fiber"] = fiber.label(*s_.ring());
    out.body["route"] = route;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "i,degree,dim,route\n";
    for (const auto& [key, e] : t.entries) {
      Json r;
      r["i"] = e.i;
      r["degree"] = degree_json(e.degree, rank_);
      r["dim"] = e.dim;
      r["route"] = route_name(e.route);
      rows.push_back(r);
      csv << e.i << "," << csv_escape(degree_text(e.degree, rank_)) << "," << e.dim << "," << route_name(e.route) << "\n";
    }
    out.body["rows"] = rows;
    out.csv = csv.str();
    return out;
  }

  Output invariants(const Command& c) {
    auto m = s_.module(c.target);
    auto fiber = s_.fiber(c.fiber);
    CohomologyInvariants inv = cohomology_invariants(m, fiber);
    Output out;
    out.body["module"] = c.target;
    out.body["fiber"] = fiber.label(*s_.ring());
    out.body["dim"] = inv.dim;
    out.body["depth"] = inv.depth;
    Json a = Json::array();
    for (const auto& v : inv.a) a.push_back(opt_json(v));
    out.body["a"] = a;
    out.body["reg"] = opt_json(inv.regularity);
    return out;
  }

  Output loci(const Command& c) {
    auto m = s_.module(c.target);
    Output out;
    out.body["module"] = c.target;
    out.body["window_slack"] = o_.window_slack;
    out.body["nonfree"] = locus_json(nonfree_locus(m, presentation_window(m, o_.window_slack)));
    Locus d = duality_exclusion_locus(m, o_.window_slack);
    out.body["duality"] = locus_json(d);
    try {
      Certificate cert = dense_open_certificate(d);
      Json cj;
      cj["global"] = cert.global ? Json(cert.global->to_string()) : Json(nullptr);
      Json comps = Json::array();
      for (const auto& cc : cert.components) {
        Json x;
        x["component"] = cc.component;
        x["a"] = cc.a ? Json(cc.a->to_string()) : Json(nullptr);
        comps.push_back(x);
      }
      cj["components"] = comps;
      out.body["certificate"] = cj;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LocusIsEverything) throw;
      out.body["certificate"] = nullptr;
    }
    return out;
  }

  Output specialize(const Command& c) {
    const Decl* d = s_.script().find(c.target);
    auto fiber = s_.fiber(c.fiber);
    PowersBundle b = d->kind == Decl::Kind::Ideal ? powers_of_ideal(s_.ideal(c.target))
                                                  : powers_of_module(s_.module(c.target), EmbeddingChoice::Echelon, o_.seed);
    std::vector<Degree> window;
    if (c.window) {
      window = window_of(*c.window);
    } else {
      std::int64_t lo = 0;
      bool first = true;
      for (const auto& sh : b.module.target.shifts) {
        std::int64_t p = s_.ring()->psi(sh);
        lo = first ? p : std::min(lo, p);
        first = false;
      }
      const std::int64_t k = c.power;
      window = degree_window(*s_.ring(), k * lo, k * b.b + 2);
    }
    SpecializedPower sp = specialize_power(b, c.power, fiber);
    const bool has_generic = s_.ring()->base_is_domain() && !s_.ring()->has_base_ideal();
    Output out;
    out.body["module"] = c.target;
    out.body["power"] = c.power;
    out.body["fiber"] = fiber.label(*s_.ring());
    out.body["rank"] = b.rank;
    out.body["b"] = b.b;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "k,degree,dim,generic_dim\n";
    for (const auto& deg : window) {
      Json r;
      r["degree"] = degree_json(deg, rank_);
      std::size_t dim = sp.dim(deg);
      r["dim"] = dim;
      Json g = has_generic ? Json(b.power_dim(c.power, deg)) : Json(nullptr);
      r["generic_dim"] = g;
      rows.push_back(r);
      csv << c.power << "," << csv_escape(degree_text(deg, rank_)) << "," << dim << ","
          << (has_generic ? g.dump() : std::string()) << "\n";
    }
    out.body["rows"] = rows;
    if (b.is_ideal) {
      Json gens = Json::array();
      for (const auto& p : ideal_groebner_basis(sp.ideal)) gens.push_back(p.to_string());
      out.body["groebner_basis"] = gens;
      out.body["equals_power_of_specialization"] = ideal_equal(sp.ideal, specialized_ideal_power(b, c.power, fiber));
    }
    out.csv = csv.str();
    return out;
  }

  Output ratmap(const Command& c) {
    std::vector<Poly> forms;
    for (const auto& e : c.forms) forms.push_back(expr_to_poly(e, s_.ring()));
    RationalMap map = RationalMap::make(forms);
    auto fiber = s_.fiber(c.fiber);
    const unsigned k = o_.power_cutoff ? o_.power_cutoff : default_power_cutoff(*s_.ring());
    RatMapReport r = ratmap_report(map, fiber, k, o_.seed);
    Output out;
    out.body["fiber"] = r.fiber;
    out.body["finite"] = r.finite;
    out.body["degY"] = r.finite ? Json(r.deg_image) : Json(nullptr);
    out.body["degG"] = r.finite ? Json(r.deg_map) : Json(nullptr);
    out.body["e_sat"] = r.finite ? Json(r.e_sat) : Json(nullptr);
    out.body["j"] = r.j;
    out.body["stable"] = r.stable;
    out.body["identity_holds"] = r.identity_holds;
    out.body["oracle_degG"] = opt_json(r.oracle_deg_map);
    out.body["power_cutoff"] = k;
    Json table = Json::array();
    std::ostringstream csv;
    csv << "k,power_dim,saturated_dim,h1\n";
    for (const auto& row : r.power_table) {
      Json t;
      t["k"] = row.k;
      t["power_dim"] = row.power_dim;
      t["saturated_dim"] = row.saturated_dim;
      t["h1"] = row.h1;
      table.push_back(t);
      csv << row.k << "," << row.power_dim << "," << row.saturated_dim << "," << row.h1 << "\n";
    }
    out.body["power_table"] = table;
    out.csv = csv.str();
    return out;
  }

  Output harness(const Command& c) {
    auto m = s_.module(c.target);
    Locus l = c.locus == "none" ? Locus::empty(s_.ring()) : duality_exclusion_locus(m, o_.window_slack);
    std::vector<std::pair<int, Degree>> qs;
    std::vector<Degree> window;
    std::vector<std::string> keys;
    for (const auto& q : c.quantities) {
      Degree d = to_degree(q.degree, rank_);
      qs.emplace_back(q.i, d);
      window.push_back(d);
      keys.push_back("h" + std::to_string(q.i) + "_" + degree_text(d, rank_));
    }
    FiberQuantity quantity = [&](const FiberPoint& p) {
      CohomologyTable t = local_cohomology_dims_dualcomplex(m, window, p);
      FiberTable out;
      for (std::size_t i = 0; i < qs.size(); ++i)
        out[keys[i]] = static_cast<std::int64_t>(t.dim(qs[i].first, qs[i].second));
      return out;
    };
    SamplerSpec spec;
    spec.seed = o_.seed;
    spec.threads = o_.threads;
    if (c.grid) spec.grid_radius = static_cast<int>(*c.grid);
    if (c.random) spec.random_count = static_cast<int>(*c.random);
    if (c.range) spec.random_range = static_cast<int>(*c.range);
    HarnessVerdict v = locally_constant_harness(quantity, l, spec);

    Output out;
    out.body["module"] = c.target;
    out.body["seed"] = v.seed;
    out.body["quantities"] = keys;
    out.body["locus"] = locus_json(l);
    Json samples = Json::array();
    std::ostringstream csv;
    csv << "label,component,in_locus,matches_reference";
    for (const auto& k : keys) csv << "," << csv_escape(k);
    csv << "\n";
    for (const auto& s : v.samples) {
      Json j;
      j["label"] = s.label;
      j["component"] = s.component;
      j["in_locus"] = s.in_locus;
      j["values"] = s.table;
      j["matches_reference"] = s.matches_reference;
      samples.push_back(j);
      csv << csv_escape(s.label) << "," << csv_escape(s.component) << "," << s.in_locus << ","
          << s.matches_reference;
      for (const auto& k : keys) csv << "," << s.table.at(k);
      csv << "\n";
    }
    out.body["samples"] = samples;
    Json ref;
    for (const auto& [comp, t] : v.reference) ref[comp] = t;
    out.body["reference"] = ref.is_null() ? Json::object() : ref;
    Json jumps = Json::array(), viol = Json::array();
    for (auto i : v.jumps) jumps.push_back(v.samples[i].label);
    for (auto i : v.violations) viol.push_back(v.samples[i].label);
    out.body["jumps"] = jumps;
    out.body["violations"] = viol;
    out.body["locally_constant"] = v.locally_constant;
    out.body["constant"] = v.constant;
    out.csv = csv.str();
    return out;
  }

  Output betti(const Command& c) {
    auto m = s_.module(c.target);
    auto fiber = s_.fiber(c.fiber);
    FiberMap fm(s_.ring(), fiber);
    FreeComplex res = free_resolution(fm(m));
    BettiTable t = betti_table(res);
    Output out;
    out.body["module"] = c.target;
    out.body["fiber"] = fiber.label(*s_.ring());
    out.body["complete"] = res.complete;
    Json rows = Json::array();
    for (const auto& [key, n] : t.entries) {
      Json r;
      r["i"] = key.first;
      r["degree"] = degree_json(key.second, rank_);
      r["count"] = n;
      rows.push_back(r);
    }
    out.body["table"] = rows;
    out.csv = t.to_csv(*fm.target());
    return out;
  }

  const Session& s_;
  const RunOptions& o_;
  int rank_;
};

}  // namespace

RingPtr build_ring(const RingDecl& decl) {
  RingDescriptor d;
  d.characteristic = decl.characteristic;
  if (decl.base == "QQ" || decl.base == "GF") {
    d.base_kind = BaseKind::Field;
  } else if (decl.base == "poly") {
    d.base_kind = BaseKind::Polynomial;
  } else {
    d.base_kind = BaseKind::Quotient;
    for (const auto& e : decl.base_ideal) d.base_ideal.push_back(format_expr(e));
  }
  d.base_vars = decl.base_vars;
  bool two = !decl.vars2.empty();
  for (const auto& v : decl.vars) two = two || v.degree.c.size() == 2;
  for (const auto& v : decl.vars2) two = two || v.degree.c.size() == 2;
  d.grading_rank = two ? 2 : 1;
  for (const auto& v : decl.vars) d.x_vars.push_back({v.name, to_degree(v.degree, d.grading_rank)});
  for (const auto& v : decl.vars2) d.y_vars.push_back({v.name, to_degree(v.degree, d.grading_rank)});
  if (decl.psi) {
    Degree p = to_degree(*decl.psi, d.grading_rank);
    d.psi.assign(p.begin(), p.begin() + d.grading_rank);
  }
  d.order = decl.order == "lex" ? BlockOrderKind::Lex : BlockOrderKind::GRevLex;
  return Ring::make(d);
}

Session::Session(SessionScript script) : script_(std::move(script)) {
  ring_ = build_ring(script_.ring);
  const int rank = ring_->grading_rank();
  for (const auto& d : script_.decls) {
    switch (d.kind) {
      case Decl::Kind::Ideal: {
        std::vector<Poly> gens;
        for (const auto& e : d.gens) gens.push_back(expr_to_poly(e, ring_));
        ideals_[d.name] = gens;
        std::vector<Poly> nz;
        for (const auto& g : gens)
          if (!g.is_zero()) nz.push_back(g);
        modules_[d.name] = nz.empty() ? free_module_presentation(FreeModule(ring_, {Degree{0, 0}}))
                                      : quotient_presentation(nz);
        break;
      }
      case Decl::Kind::Module: {
        std::vector<Degree> shifts;
        for (const auto& s : d.shifts) shifts.push_back(to_degree(s, rank));
        FreeModule target(ring_, shifts);
        if (d.rows.empty() || d.rows[0].empty()) {
          modules_[d.name] = free_module_presentation(target);
        } else {
          std::vector<std::vector<Poly>> entries;
          for (const auto& row : d.rows) {
            std::vector<Poly> r;
            for (const auto& e : row) r.push_back(expr_to_poly(e, ring_));
            entries.push_back(std::move(r));
          }
          GradedMatrix m = GradedMatrix::from_entries(target, entries);
          m.validate();
          modules_[d.name] = m;
        }
        break;
      }
      case Decl::Kind::Fiber: {
        if (d.generic) {
          fibers_[d.name] = FiberPoint::generic();
          break;
        }
        std::vector<const Expr*> ordered;
        for (const auto& z : script_.ring.base_vars)
          for (const auto& [name, v] : d.values)
            if (name == z) ordered.push_back(&v);
        if (d.minpoly) {
          std::vector<std::string> vals;
          for (const auto* e : ordered) vals.push_back(format_expr(*e));
          fibers_[d.name] = FiberPoint::algebraic(vals, d.ext_var, format_expr(*d.minpoly));
        } else {
          std::vector<mpq_class> vals;
          for (const auto* e : ordered) vals.push_back(evaluate_number(*e));
          fibers_[d.name] = FiberPoint::rational(vals);
        }
        break;
      }
    }
  }
}

ModulePresentation Session::module(const std::string& name) const {
  auto it = modules_.find(name);
  if (it == modules_.end()) fail(ErrorCode::UndeclaredName, "no module or ideal named '" + name + "'");
  return it->second;
}

std::vector<Poly> Session::ideal(const std::string& name) const {
  auto it = ideals_.find(name);
  if (it == ideals_.end()) fail(ErrorCode::UndeclaredName, "no ideal named '" + name + "'");
  return it->second;
}

FiberPoint Session::fiber(const std::string& name) const {
  auto it = fibers_.find(name);
  if (it == fibers_.end()) fail(ErrorCode::UndeclaredName, "no fiber named '" + name + "'");
  return it->second;
}

RunResult Session::run(const RunOptions& opts) const {
  RunResult res;
  Runner runner(*this, opts);
  if (!opts.out_dir.empty() && !script_.commands.empty()) std::filesystem::create_directories(opts.out_dir);
  for (std::size_t i = 0; i < script_.commands.size(); ++i) {
    const Command& c = script_.commands[i];
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02zu_", i + 1);
    CommandResult cr;
    cr.file = std::string(prefix) + command_name(c.kind) + ".json";
    Json j;
    j["command"] = format_command(c);
    j["seed"] = opts.seed;
    try {
      Output out = runner.run(c);
      j["status"] = "ok";
      for (auto it = out.body.begin(); it != out.body.end(); ++it) j[it.key()] = it.value();
      if (opts.csv) cr.csv = out.csv;
    } catch (const Error& e) {
      j["status"] = "error";
      j["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      cr.ok = false;
      res.exit_code = 1;
    }
    cr.json = j.dump(2) + "\n";
    if (!opts.out_dir.empty()) {
      std::ofstream(std::filesystem::path(opts.out_dir) / cr.file, std::ios::binary) << cr.json;
      if (!cr.csv.empty()) {
        std::string csv_name = cr.file.substr(0, cr.file.size() - 5) + ".csv";
        std::ofstream(std::filesystem::path(opts.out_dir) / csv_name, std::ios::binary) << cr.csv;
      }
    }
    res.results.push_back(std::move(cr));
  }
  return res;
}

}  // namespace fibercoh
