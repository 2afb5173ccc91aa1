#include "qf/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "qf/fixtures.hpp"
#include "qf/polytope.hpp"
#include "qf/przyjalkowski.hpp"
#include "qf/sagbi.hpp"

namespace qf {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// index of the first differing coefficient, or -1
long first_difference(const PeriodSequence& a, const PeriodSequence& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return (long)i;
  return a.size() == b.size() ? -1 : (long)std::min(a.size(), b.size());
}

std::string stats_string(const Polytope& p) {
  return std::to_string(p.vertices.size()) + "/" + std::to_string(p.lattice_points.size()) + "/" +
         p.normalized_volume.get_str();
}

struct Check {
  bool ok = true;
  std::ostringstream out;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      out << "[" << what << "] ";
    }
  }
};

MirrorRun fixture_run(const Fixture& f, bool require = true) {
  return mirror_pipeline(*f.quiver, bundle_from_json(f.bundle), require);
}

void ladder_combinatorics(Check& c, const std::vector<Fixture>& fx) {
  double worst = 0;
  for (const char* name : {"gr42", "gr52"}) {
    const Fixture& f = find_fixture(fx, name);
    auto t0 = Clock::now();
    LadderQuiver lq = build_ladder_quiver(build_ladder(*f.quiver));
    worst = std::max(worst, since(t0));
    const auto& e = f.value("ladder");
    c.expect((long)lq.vertices.size() == e.at("vertices").get<long>() &&
                 (long)lq.arrows.size() == e.at("arrows").get<long>(),
             std::string(name) + " counts");
    c.out << name << " " << lq.vertices.size() << "v/" << lq.arrows.size() << "a; ";
  }

  // every quiver with at most 4 vertices and multiplicities at most 3
  long tested = 0, failures = 0;
  for (long n = 2; n <= 4; ++n) {
    std::vector<std::pair<long, long>> slots;
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j) slots.push_back({i, j});
    long configs = 1;
    for (std::size_t k = 0; k < slots.size(); ++k) configs *= 4;
    for (long code = 0; code < configs; ++code) {
      IntMat adj(n, IntVec(n, 0));
      long rest = code;
      for (auto [i, j] : slots) adj[i][j] = rest % 4, rest /= 4;
      IntVec dims(n, 1);
      std::function<void(long)> pick = [&](long v) {
        if (v < n) {
          for (long r = 1; r <= 6; ++r) {
            dims[v] = r;
            pick(v + 1);
          }
          return;
        }
        Quiver q;
        try {
          q = validate_quiver(adj, dims);
          if (vertex_stats(q).total_dim > 6 || !is_fano_certificate(q)) return;
          y_shape_decompose(q);
        } catch (const Error&) {
          return;
        }
        ++tested;
        auto t0 = Clock::now();
        try {
          LadderDiagram ld = build_ladder(q);
          LadderQuiver lq = build_ladder_quiver(ld);
          long dim = ld.stats.total_dim;
          if ((long)lq.arrows.size() - ((long)lq.vertices.size() - 1) != dim || (long)ld.boxes.size() != dim)
            ++failures;
        } catch (const Error&) {
          ++failures;
        }
        worst = std::max(worst, since(t0));
      };
      pick(1);
    }
  }
  c.expect(tested > 0 && failures == 0, "dimension identity sweep");
  c.expect(worst < 1.0, "time per quiver");
  c.out << "sweep " << tested << " quivers, " << failures << " failures, slowest " << worst << " s";
}

void section_counts(Check& c, const std::vector<Fixture>& fx) {
  long grass = 0;
  for (long n = 2; n <= 8; ++n)
    for (long r = 1; r < n; ++r) {
      LadderQuiver lq = build_ladder_quiver(build_ladder(grassmannian(n, r)));
      long paths = (long)paths_between(lq, lq.path_start.at(1), lq.path_end.at(1)).size();
      c.expect(Int(paths) == binomial(n, r), "Gr(" + std::to_string(n) + "," + std::to_string(r) + ")");
      ++grass;
    }
  c.out << grass << " Grassmannians; ";
  for (const char* name : {"yshaped1", "yshaped2"}) {
    auto rep = verify_path_bijection(*find_fixture(fx, name).quiver);
    c.out << name;
    for (const auto& v : rep.vertices) {
      c.expect(v.paths == v.minors, std::string(name) + " vertex " + std::to_string(v.vertex));
      c.out << " " << v.paths << "=" << v.minors;
    }
    c.out << "; ";
  }
}

void meander_lemma(Check& c, const std::vector<Fixture>& fx) {
  for (const char* name : {"gr42", "gr52", "fl5321", "yshaped1"}) {
    auto t0 = Clock::now();
    LadderQuiver lq = build_ladder_quiver(build_ladder(*find_fixture(fx, name).quiver));
    ToricGitData gd = git_data(lq);
    std::vector<ArrowSet> from_meanders;
    for (const auto& m : meanders(lq)) from_meanders.push_back(m.support);
    std::sort(from_meanders.begin(), from_meanders.end());
    from_meanders.erase(std::unique(from_meanders.begin(), from_meanders.end()), from_meanders.end());
    auto cones = minimal_anticones_bruteforce(gd, lq);
    double t = since(t0);
    c.expect(from_meanders == cones, std::string(name) + " supports");
    c.expect(t < 30, std::string(name) + " time");
    c.out << name << " " << from_meanders.size() << "/" << cones.size() << " (" << t << " s); ";
  }
}

void gorenstein(Check& c, const std::vector<Fixture>& fx) {
  for (const auto& f : fx) {
    if (!f.quiver) continue;
    LadderQuiver lq = build_ladder_quiver(build_ladder(*f.quiver));
    ToricGitData gd = git_data(lq);
    std::string why;
    try {
      gorenstein_check(gd, lq, *f.quiver);
    } catch (const Error& e) {
      why = e.what();
    }
    c.expect(why.empty(), f.name + " " + why);
    c.out << f.name << " " << meanders(lq).size() << " meanders; ";
  }
}

void mirror_reproduction(Check& c, const std::vector<Fixture>& fx) {
  auto t0 = Clock::now();
  for (const char* name : {"pid20", "pid115", "pid232"}) {
    const Fixture& f = find_fixture(fx, name);
    unsigned n = f.value("period_terms").get<unsigned>();
    MirrorRun run = fixture_run(f);
    auto ours = classical_period(run.polynomial, n);
    auto theirs = classical_period(parse_laurent(f.value("polynomial").get<std::string>()), n);
    long d = first_difference(ours, theirs);
    c.expect(d < 0, name);
    c.out << name << " ";
    if (d < 0)
      c.out << n << " terms equal; ";
    else
      c.out << "differs at t^" << d << " (" << ours[d].get_str() << " vs " << theirs[d].get_str() << "); ";
  }
  c.expect(since(t0) < 60, "time");
}

void oracle_agreement(Check& c, const std::vector<Fixture>& fx) {
  for (const char* name : {"pid20", "pid115", "pid232", "gr86-wedge5"}) {
    auto t0 = Clock::now();
    MirrorRun run = fixture_run(find_fixture(fx, name));
    bool eq = classical_period(run.polynomial, 10) == toric_ci_period(run.mp, 10);
    double t = since(t0);
    c.expect(eq, name);
    c.expect(t < 120, std::string(name) + " time");
    c.out << name << (eq ? " equal" : " differ") << " (" << t << " s); ";
  }
}

void negative_control(Check& c, const std::vector<Fixture>& fx) {
  const Fixture& g = find_fixture(fx, "gr86-wedge5");
  MirrorRun run = fixture_run(g);
  Laurent rmm = parse_laurent(g.value("rmm_polynomial").get<std::string>());
  long d = first_difference(classical_period(run.polynomial, 10), classical_period(rmm, 10));
  Polytope a = newton_polytope(run.polynomial), b = newton_polytope(rmm);
  c.expect(d >= 0, "gr86 periods should differ");
  c.expect(stats_string(a) == stats_string(b), "gr86 polytopes");
  c.out << "gr86 first difference at t^" << d << ", polytopes " << stats_string(a) << " vs " << stats_string(b)
        << "; ";
  MirrorRun neg = fixture_run(find_fixture(fx, "pid104"), false);
  c.expect(!neg.partition, "pid104 NotFound");
  c.out << "pid104 " << (neg.partition ? "partition found" : "NotFound");
}

void period_properties(Check& c, const std::vector<Fixture>& fx, const std::string& dir) {
  auto pb = classical_period(parse_laurent("x + 1/x"), 20);
  bool central = true;
  for (unsigned k = 0; k <= 20; ++k) central = central && pb[k] == (k % 2 ? Int(0) : binomial(k, k / 2));
  c.expect(central, "central binomials");

  Laurent f = parse_laurent(find_fixture(fx, "pid20").value("polynomial").get<std::string>());
  auto base = classical_period(f, 10);
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<long> entry(-2, 2);
  int maps = 0;
  while (maps < 5) {
    IntMat a(4, IntVec(4));
    for (auto& row : a)
      for (auto& x : row) x = entry(rng);
    Int d = det(a);
    if (d != 1 && d != -1) continue;
    ++maps;
    c.expect(classical_period(gl_equivalence(f, a), 10) == base, "GL map " + std::to_string(maps));
  }
  long done = 0;
  for (const auto& m : load_mutations(dir)) {
    Laurent g;
    try {
      g = mutate(m.f, m.h, m.pivot);
    } catch (const Error&) {
      continue;
    }
    ++done;
    c.expect(classical_period(g, 10) == classical_period(m.f, 10), "mutation " + std::to_string(done));
  }
  c.out << "central binomials to t^20; " << maps << " GL(4,Z) maps; " << done << " mutations";
}

void sagbi_shadow(Check& c, const std::vector<Fixture>& fx) {
  auto t0 = Clock::now();
  const Fixture& g = find_fixture(fx, "gr42");
  CoordinateMatrices cm = build_matrices(*g.quiver);
  VariableOrder ord = plucker_order(cm, y_shape_decompose(*g.quiver));
  std::vector<std::string> got;
  for (const auto& mt : nonzero_minors(cm.a.at(1), ord)) {
    Monomial m = mt.initial;
    std::sort(m.begin(), m.end(), [&](const Variable& a, const Variable& b) { return ord.greater(a, b); });
    std::string s;
    for (const auto& v : m) s += (s.empty() ? "" : " ") + ("x_{" + std::to_string(v.row) + std::to_string(v.col) + "}");
    got.push_back(s);
  }
  c.expect(got == g.value("initial_terms").get<std::vector<std::string>>(), "Gr(4,2) initial terms");
  c.out << "Gr(4,2) initial terms " << (c.ok ? "verbatim" : "differ") << "; ";
  for (const char* name : {"gr42", "gr52", "yshaped1"}) {
    const Quiver& q = *find_fixture(fx, name).quiver;
    auto br = verify_path_bijection(q);
    auto kr = verify_binomial_kernels(q, 2);
    c.expect(br.pass, std::string(name) + " bijection");
    c.expect(kr.pass, std::string(name) + " kernels");
    c.out << name << " bijection " << (br.pass ? "ok" : "FAIL") << ", " << kr.classes << " classes/" << kr.relations
          << " relations; ";
  }
  c.expect(since(t0) < 60, "time");
}

const char* kTitles[] = {"",
                         "ladder combinatorics",
                         "section counts",
                         "meander lemma",
                         "Gorenstein certificates",
                         "mirror reproduction",
                         "oracle agreement",
                         "negative control",
                         "period properties",
                         "SAGBI shadow"};

}  // namespace

const std::set<int>& known_unattainable() {
  static const std::set<int> s{5};
  return s;
}

CriterionResult run_criterion(int id, const std::string& dir) {
  CriterionResult r;
  r.id = id;
  r.title = (id >= 1 && id <= 9) ? kTitles[id] : "unknown";
  r.known_unattainable = known_unattainable().count(id) > 0;
  auto t0 = Clock::now();
  Check c;
  try {
    auto fx = load_fixtures(dir);
    switch (id) {
      case 1: ladder_combinatorics(c, fx); break;
      case 2: section_counts(c, fx); break;
      case 3: meander_lemma(c, fx); break;
      case 4: gorenstein(c, fx); break;
      case 5: mirror_reproduction(c, fx); break;
      case 6: oracle_agreement(c, fx); break;
      case 7: negative_control(c, fx); break;
      case 8: period_properties(c, fx, dir); break;
      case 9: sagbi_shadow(c, fx); break;
      default: throw Error("BadInput", "criteria are numbered 1 to 9");
    }
  } catch (const std::exception& e) {
    c.ok = false;
    c.out << "error: " << e.what();
  }
  r.pass = c.ok;
  r.detail = c.out.str();
  r.seconds = since(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::string& dir) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id, dir));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s.precision(3);
  s << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " [" << r.title << "] " << r.detail << " ("
    << r.seconds << " s)";
  if (!r.pass && r.known_unattainable) s << " (known unattainable)";
  return s.str();
}

}  // namespace qf
