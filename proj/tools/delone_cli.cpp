#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "delone/choquet.hpp"
#include "delone/hierarchy_io.hpp"
#include "delone/matching.hpp"
#include "delone/nonrect.hpp"
#include "delone/patch_io.hpp"
#include "delone/rectifiability.hpp"
#include "delone/ue.hpp"
#include "delone/verify.hpp"

using namespace delone;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, resource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// key=value parameter file
std::map<std::string, std::string> read_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::map<std::string, std::string> kv;
  io::LineReader lr(in);
  std::string line;
  static const std::set<std::string> known{"L_schedule", "depth", "mode", "m",   "N",
                                           "ell",        "P_star", "d1p", "d2p", "N1_steps"};
  while (lr.next(line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) lr.fail("expected key=value");
    const std::string k = trim(line.substr(0, eq));
    if (!known.count(k)) lr.fail("unknown key " + k);
    kv[k] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::int64_t to_i64(const std::string& s) {
  const Rational q = parse_rational(s);
  if (denominator(q) != 1) throw UsageError("expected an integer: " + s);
  return to_int64(numerator(q));
}

struct GenConfig {
  std::string construction = "nonrect";
  std::size_t depth = 2;
  std::string mode = "toy";
  std::string params;
  std::size_t extreme_points = 2;
  std::string simplex;
  std::string stripe = "literal";
  std::string out;
  std::string ledger;
};

nonrect::Schedule make_schedule(const GenConfig& c) {
  nonrect::Schedule s;
  s.depth = c.depth;
  s.rigorous = c.mode == "rigorous";
  if (c.params.empty()) return s;
  const auto kv = read_params(c.params);
  if (kv.count("mode")) s.rigorous = kv.at("mode") == "rigorous";
  if (kv.count("depth")) s.depth = static_cast<std::size_t>(to_i64(kv.at("depth")));
  if (kv.count("L_schedule"))
    for (const auto& t : split(kv.at("L_schedule"), ',')) s.L.push_back(parse_rational(trim(t)));
  const bool overrides = kv.count("m") || kv.count("N") || kv.count("ell") || kv.count("P_star");
  if (s.rigorous && overrides) throw UsageError("rigorous mode does not accept m, N, ell or P_star overrides");
  if (kv.count("m")) s.toy.m = to_i64(kv.at("m"));
  if (kv.count("N")) s.toy.N = to_i64(kv.at("N"));
  if (kv.count("ell")) s.toy.ell = to_i64(kv.at("ell"));
  if (kv.count("P_star")) s.toy.P_star = to_i64(kv.at("P_star"));
  if (kv.count("d1p")) s.d1p = parse_rational(kv.at("d1p"));
  if (kv.count("d2p")) s.d2p = parse_rational(kv.at("d2p"));
  if (kv.count("N1_steps"))
    for (const auto& t : split(kv.at("N1_steps"), ',')) s.n1_steps.insert(static_cast<std::size_t>(to_i64(trim(t))));
  return s;
}

std::string step_ledger(const std::vector<nonrect::StepRecord>& steps) {
  std::ostringstream os;
  for (const auto& r : steps) {
    os << "step " << r.step << "\n  L = " << to_string(r.L) << "\n  d1 = " << to_string(r.d1)
       << ", d2 = " << to_string(r.d2) << "\n  d1' = " << to_string(r.d1p) << ", d2' = " << to_string(r.d2p)
       << "\n  m = " << r.params.m << ", P_star = " << r.params.P_star << ", N = " << r.params.N
       << (r.n1 ? " (control)" : "") << ", ell = " << r.params.ell << "\n  first level = " << r.first_level << "\n";
  }
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

choquet::ChoquetSeq choquet_sequence(const GenConfig& c, std::size_t depth) {
  if (c.simplex.empty()) return choquet::toy_sequence(c.extreme_points, depth);
  std::ifstream in(c.simplex);
  if (!in) throw UsageError("cannot open " + c.simplex);
  const auto sp = choquet::read_simplex_spec(in, std::filesystem::path(c.simplex).parent_path().string());
  if (!sp.matrices.empty()) {
    if (sp.p.size() != sp.matrices.size() + 1) throw DomainError("matrices need one more p value than matrices");
    std::vector<BigInt> r = sp.r;
    if (r.empty()) r.assign(sp.matrices.size(), 1);
    auto seq = choquet::make_sequence(sp.p, r, sp.matrices.front().rows(), sp.dimension);
    seq.A = sp.matrices;
    return seq;
  }
  const std::size_t e = sp.extreme_points.value_or(c.extreme_points);
  if (sp.p.empty()) return choquet::toy_sequence(e, depth);
  std::vector<BigInt> r = sp.r;
  if (r.empty()) r.assign(sp.p.size() - 1, 1);
  auto seq = choquet::make_sequence(sp.p, r, e + 1, e - 1);
  choquet::make_finite_dim_matrices(seq, e);
  return seq;
}

int cmd_gen(const GenConfig& c) {
  if (c.construction == "choquet") {
    // depth counts hierarchy levels
    if (c.depth < 2) throw UsageError("choquet needs depth >= 2");
    const auto seq = choquet_sequence(c, c.depth - 1);
    const auto K = choquet::validate_matrices(seq);
    const auto b = choquet::build_choquet_spec(seq, seq.A.size(), choquet::parse_stripe_rule(c.stripe));
    const auto P = choquet::validate_levels(b, seq);
    std::ostringstream led;
    led << choquet::ledger(seq, K);
    led << "i0 " << b.witness.i0 + 1 << "\ndbar " << to_string(b.witness.dbar) << "\ndbar' "
        << to_string(b.witness.dbar_prime) << "\n";
    const auto [d, dp] = choquet::density_bounds(seq, b.witness);
    led << "d " << to_string(d) << "\nd' " << to_string(dp) << "\n";
    for (const auto& pr : P.properties) led << pr.name << '\t' << (pr.passed ? "pass" : "fail") << '\t' << pr.witness << '\n';
    if (!c.out.empty()) io::save_hierarchy(c.out, b.spec);
    emit(c.ledger, led.str());
    return K.all_passed() && P.all_passed() ? ok : check_failed;
  }
  if (c.construction != "nonrect" && c.construction != "ue") throw UsageError("unknown construction " + c.construction);
  const auto sched = make_schedule(c);
  if (sched.rigorous) {
    if (c.construction != "nonrect") throw UsageError("rigorous mode is only available for nonrect");
    emit(c.ledger, nonrect::build_rigorous_plan(sched).ledger());
    return ok;
  }
  HierarchySpec spec;
  std::string led;
  if (c.construction == "nonrect") {
    auto b = nonrect::build_toy_spec(sched);
    spec = std::move(b.spec);
    led = step_ledger(b.steps);
  } else {
    auto b = ue::build_ue_spec(sched);
    spec = std::move(b.spec);
    led = step_ledger(b.steps);
    for (std::size_t i = 0; i < b.deltas.size(); ++i)
      led += "offset level " + std::to_string(i + 1) + " -> " + std::to_string(i + 2) + " = " + to_string(b.deltas[i]) + "\n";
    led += "limit density = " + to_string(ue::limit_density(spec)) + "\n";
  }
  const auto rep = validate_scheme(spec);
  for (const auto& p : rep.properties) led += p.name + '\t' + (p.passed ? "pass" : "fail") + '\t' + p.witness + '\n';
  if (!c.out.empty()) io::save_hierarchy(c.out, spec);
  emit(c.ledger, led);
  return rep.all_passed() ? ok : check_failed;
}

std::size_t check_id(const HierarchySpec& spec, std::size_t level, std::size_t id) {
  if (level < 1 || level > spec.depth()) throw UsageError("level outside 1.." + std::to_string(spec.depth()));
  if (id < 1 || id > spec.patch_count(level)) throw UsageError("id outside 1.." + std::to_string(spec.patch_count(level)));
  return id - 1;
}

Patch load_needle(const std::string& path) {
  if (path.empty()) return Patch::full(1, 1);
  return io::load_patch(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delone hierarchy generator and analyzer"};
  app.require_subcommand(1);
  std::uint64_t cap = default_memory_cap();
  app.add_option("--memory-cap", cap, "Cell cap for materialization");

  GenConfig gen;
  auto* g = app.add_subcommand("gen", "Build a hierarchy descriptor and ledger");
  g->add_option("--construction", gen.construction)->check(CLI::IsMember({"nonrect", "ue", "choquet"}));
  g->add_option("--depth", gen.depth);
  g->add_option("--mode", gen.mode)->check(CLI::IsMember({"toy", "rigorous"}));
  g->add_option("--params", gen.params, "key=value parameter file");
  g->add_option("--extreme-points", gen.extreme_points);
  g->add_option("--simplex", gen.simplex, "Simplex description file");
  g->add_option("--stripe-rule", gen.stripe)->check(CLI::IsMember({"literal", "scaled", "square_blocks"}));
  g->add_option("-o,--out", gen.out, "Descriptor output (.dhs)");
  g->add_option("--ledger", gen.ledger, "Ledger output (stdout by default)");

  std::string in, out, format = "pbm", needle, mode = "sliding";
  std::size_t level = 1, id = 1, from = 1, to = 0;
  auto* ex = app.add_subcommand("export", "Materialize one level patch");
  ex->add_option("--in", in)->required();
  ex->add_option("--level", level);
  ex->add_option("--id", id);
  ex->add_option("--format", format)->check(CLI::IsMember({"pbm", "points", "dpf"}));
  ex->add_option("-o,--out", out);

  auto* st = app.add_subcommand("stats", "Per-level sizes, point counts and frame checks");
  st->add_option("--in", in)->required();

  bool scan = false;
  auto* cn = app.add_subcommand("count", "Exact needle occurrences in a level patch");
  cn->add_option("--in", in)->required();
  cn->add_option("--needle", needle, "Needle patch (.dpf); a single point by default");
  cn->add_option("--level", level);
  cn->add_option("--id", id);
  cn->add_option("--mode", mode)->check(CLI::IsMember({"sliding", "block"}));
  cn->add_flag("--scan", scan, "Also count by materializing and scanning");

  auto* fr = app.add_subcommand("freq", "Needle densities per level with brackets (TSV)");
  fr->add_option("--in", in)->required();
  fr->add_option("--needle", needle);
  fr->add_option("--from", from);
  fr->add_option("--to", to);

  std::vector<std::int64_t> radii{1, 2, 4};
  auto* rp = app.add_subcommand("repetitivity", "Smallest R containing every r x r pattern");
  rp->add_option("--in", in)->required();
  rp->add_option("--level", level);
  rp->add_option("--id", id);
  rp->add_option("--r", radii);

  std::string L = "1", eps = "1/100", P = "1", d = "1", dprime = "5/8", lambda_s = "1/10", tau_s = "1/2";
  auto* cs = app.add_subcommand("constants", "Construction constants as exact rationals");
  cs->add_option("--L", L);
  cs->add_option("--eps", eps);
  cs->add_option("--P", P);
  cs->add_option("--d", d);
  cs->add_option("--dprime", dprime);

  std::string map_path, points_path;
  std::vector<std::int64_t> grid;
  std::vector<std::int64_t> box;
  auto* bl = app.add_subcommand("bilip", "Probe-grid predicates for a map, or distortion of an injection");
  bl->add_option("--map", map_path, "Map file (x y -> u v)");
  bl->add_option("--grid", grid, "M N P")->expected(3);
  bl->add_option("--lambda", lambda_s);
  bl->add_option("--tau", tau_s);
  bl->add_option("--points", points_path, "Points file for the minimum distortion search");
  bl->add_option("--box", box, "w h target box for the exact search")->expected(2);

  std::string suite = "all";
  verify::Options vopt;
  auto* vf = app.add_subcommand("verify", "Run a check suite and print a TSV report");
  vf->add_option("--suite", suite);
  vf->add_option("--depth", vopt.depth);
  vf->add_option("--trials", vopt.trials);
  vf->add_option("--seed", vopt.seed);
  vf->add_option("--in", in, "Hierarchy for the hierarchy suite");
  vf->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*ex) {
      const auto spec = io::load_hierarchy(in);
      const Patch p = materialize(spec, level, check_id(spec, level, id), cap);
      std::ostringstream os;
      if (format == "pbm")
        io::write_pbm(os, p);
      else if (format == "points")
        io::write_points(os, p.points());
      else
        io::write_patch(os, p);
      emit(out, os.str());
      return ok;
    }
    if (*st) {
      const auto spec = io::load_hierarchy(in);
      std::cout << "level\tpatches\twidth\theight\tpoint_counts\tnote\n";
      for (std::size_t n = 1; n <= spec.depth(); ++n) {
        OccurrenceCounter counter(spec, Patch::full(1, 1), cap);
        std::cout << n << '\t' << spec.patch_count(n) << '\t' << spec.width(n) << '\t' << spec.height(n) << '\t';
        for (std::size_t j = 0; j < spec.patch_count(n); ++j)
          std::cout << (j ? "," : "") << counter.count(n, j, OccurrenceMode::sliding);
        std::cout << '\t' << spec.level(n).note << '\n';
      }
      const auto rep = validate_scheme(spec);
      for (const auto& p : rep.properties)
        std::cout << "# " << p.name << '\t' << (p.passed ? "pass" : "fail") << '\t' << p.witness << '\n';
      return rep.all_passed() ? ok : check_failed;
    }
    if (*cn) {
      const auto spec = io::load_hierarchy(in);
      const std::size_t j = check_id(spec, level, id);
      const Patch nd = load_needle(needle);
      const auto m = mode == "block" ? OccurrenceMode::block_aligned : OccurrenceMode::sliding;
      const BigInt c = count_occurrences(spec, nd, level, j, m, cap);
      std::cout << to_string(c) << '\n';
      if (!scan) return ok;
      const Patch hay = materialize(spec, level, j, cap);
      std::uint64_t s = 0;
      if (m == OccurrenceMode::sliding) {
        s = count_matches(hay, nd);
      } else {
        if (spec.width(1) != nd.width() || spec.height(1) != nd.height())
          throw UsageError("block mode needs a needle of level-1 size");
        for (std::int64_t y = 0; y < hay.height(); y += nd.height())
          for (std::int64_t x = 0; x < hay.width(); x += nd.width()) s += count_matches(hay, nd, x, x, y, y);
      }
      std::cout << "scan " << s << '\n';
      return BigInt(s) == c ? ok : check_failed;
    }
    if (*fr) {
      const auto spec = io::load_hierarchy(in);
      const std::size_t last = to == 0 ? spec.depth() : to;
      const auto rep = ue::frequency_convergence_report(spec, load_needle(needle), from, last, 0, cap);
      std::cout << "level\tpatch_id\tneedle_id\tdensity_num\tdensity_den\tbracket_lo\tbracket_hi\n";
      for (const auto& r : rep.rows)
        std::cout << r.level << '\t' << r.patch + 1 << '\t' << r.needle + 1 << '\t' << to_string(numerator(r.density))
                  << '\t' << to_string(denominator(r.density)) << '\t'
                  << (r.bracket_lo ? to_string(*r.bracket_lo) : "-") << '\t'
                  << (r.bracket_hi ? to_string(*r.bracket_hi) : "-") << '\n';
      return rep.brackets_hold ? ok : check_failed;
    }
    if (*rp) {
      const auto spec = io::load_hierarchy(in);
      const Patch p = materialize(spec, level, check_id(spec, level, id), cap);
      bool all = true;
      std::cout << "r\tR\n";
      for (auto r : radii) {
        const auto R = estimate_repetitivity(p, r);
        all = all && R.has_value();
        std::cout << r << '\t' << (R ? std::to_string(*R) : "none") << '\n';
      }
      return all ? ok : check_failed;
    }
    if (*cs) {
      const Rational Lq = parse_rational(L), e = parse_rational(eps), dq = parse_rational(d), dpq = parse_rational(dprime);
      const BigInt Pq = numerator(parse_rational(P));
      const auto r1 = nonrect::rectification_constants(Lq, e, Pq);
      const auto r2 = nonrect::expansion_constants(Lq, dq, dpq);
      std::cout << "lambda_1\t" << to_string(r1.lambda) << "\nM0\t" << to_string(r1.M0) << "\nN0\t" << to_string(r1.N0)
                << "\nlambda_2\t" << to_string(r2.lambda) << "\nM_star\t" << to_string(r2.M_star) << "\nN_star\t"
                << to_string(r2.N_star) << "\nP0\t" << to_string(nonrect::constant_p0(Lq, e)) << "\nell_min\t"
                << to_string(nonrect::ell_min(Lq, r2.lambda)) << '\n';
      return ok;
    }
    if (*bl) {
      if (!points_path.empty()) {
        std::ifstream pin(points_path);
        if (!pin) throw UsageError("cannot open " + points_path);
        const auto pts = io::read_points(pin);
        if (box.size() == 2) {
          const auto r = lab::brute_force_min_bilip(pts, Rect{0, 0, box[0], box[1]});
          std::cout << "L_sq\t" << to_string(r.L_sq) << "\nL\t" << r.L() << '\n';
          for (std::size_t i = 0; i < pts.size(); ++i)
            std::cout << to_string(pts[i]) << " -> " << to_string(r.images[i]) << '\n';
        } else {
          const auto h = lab::heuristic_grid_map(pts, io::patch_from_points(pts).support(), Rational(8));
          std::cout << "radius\t" << h.radius << "\nL\t" << h.pairs.bilip_constant() << "\nL_adjacent\t"
                    << h.adjacent.bilip_constant() << (h.sampled ? "\t(sampled)" : "") << '\n';
        }
        return ok;
      }
      if (map_path.empty() || grid.size() != 3) throw UsageError("bilip needs --map and --grid M N P, or --points");
      const auto gs = lab::GridSpec::make(grid[0], grid[1], grid[2]);
      const auto f = CandidateMap::make(gs.rectangle(), io::load_map(map_path));
      const Rational lam = parse_rational(lambda_s), tau = parse_rational(tau_s);
      const auto viol = lab::check_no_stretch(f, gs, lam);
      std::cout << "violations\t" << viol.size() << '\n';
      for (const auto& v : viol)
        std::cout << "k=" << v.k << " i=" << v.i << " j=" << v.j << '\t' << to_string(v.x) << " -> " << to_string(v.y)
                  << (v.shifted ? " (shifted)" : "") << "\tratio_sq " << to_string(v.ratio_sq) << " > "
                  << to_string(v.bound_sq) << '\n';
      const HatMap hat = hat_extend(f);
      const auto reg = lab::find_regular_square(hat, gs, tau);
      std::cout << "regular_square\t" << (reg.k_star ? std::to_string(*reg.k_star) : "none") << '\n';
      if (reg.k_star) {
        const auto dev = lab::coarse_derivative_deviation(hat, gs, *reg.k_star);
        std::cout << "deviation_sq\t" << to_string(dev.max_sq) << "\nwitness\t" << to_string(dev.witness) << '\n';
      }
      return ok;
    }
    if (*vf) {
      if (!in.empty()) vopt.spec = io::load_hierarchy(in);
      const auto rows = verify::run_suite(suite, vopt);
      std::ostringstream os;
      verify::write_tsv(os, rows);
      emit(out, os.str());
      return verify::all_passed(rows) ? ok : check_failed;
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return resource;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return usage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
