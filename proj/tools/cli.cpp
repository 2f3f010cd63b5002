#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ifslab/attractor.hpp"
#include "ifslab/errors.hpp"
#include "ifslab/geometry.hpp"
#include "ifslab/pressure.hpp"
#include "ifslab/separation.hpp"

#ifndef IFSLAB_VERSION
#define IFSLAB_VERSION "0.0.0"
#endif

namespace ifslab::cli {

  namespace {

    using json = nlohmann::ordered_json;

    constexpr char const* schema = "ifslab/1";

    // Subsystem box counts and brackets stay below this many words per level.
    constexpr std::size_t auto_word_budget = 200000;

    struct Options {
      std::string format = "json";
      std::string out;
      int         threads = 0;
      double      tol     = default_tolerance;

      std::string              t = "1";
      std::vector<std::size_t> levels;
      std::string              c_override;
      std::string              subsystem;
      std::vector<std::string> s_values{"1/2"};
      std::size_t              n = 0;
      std::vector<std::string> probes;
      std::size_t              depth    = 6;
      std::size_t              samples  = 1000;
      std::size_t              max_len  = 20;
      std::uint64_t            seed     = 1;
      std::string              lemma    = "all";
      std::size_t              k        = 3;
      std::string              v        = "1";
      std::string              w        = "2";
      std::string              t_max    = "4096";
      std::string              resolution;
      std::vector<std::string> grid{"1/2", "1", "2", "4", "10", "50", "200"};
      std::string              t_range = "1/2:4";
      std::string              maps;
      std::string              interval = "0:1";
      std::size_t              bracket_level = 0;
      std::string              s_measure     = "auto";
      std::vector<std::string> qs{"2", "3", "4"};
    };

    struct Report {
      json                                  config = json::object();
      json                                  result = json::object();
      std::vector<std::string>              header;
      std::vector<std::vector<std::string>> rows;
      std::vector<std::string>              violations;
    };

    std::string num(double x) {
      if (std::isnan(x)) {
        return "nan";
      }
      if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
      }
      char buf[64];
      auto r = std::to_chars(buf, buf + sizeof buf, x);
      return std::string(buf, r.ptr);
    }

    json rat(Rational const& x) {
      return to_string(x);
    }

    json opt_rat(std::optional<Rational> const& x) {
      return x ? rat(*x) : json(nullptr);
    }

    json interval_json(Interval const& iv) {
      return json::array({rat(iv.left), rat(iv.right)});
    }

    json pair_json(WordPair const& p) {
      return json::array({to_string(p.u), to_string(p.w)});
    }

    json pairs_json(std::vector<WordPair> const& ps) {
      json a = json::array();
      for (auto const& p : ps) {
        a.push_back(pair_json(p));
      }
      return a;
    }

    json matrix_json(Matrix2 const& m) {
      return json::array({json::array({rat(m.a), rat(m.b)}), json::array({rat(m.c), rat(m.d)})});
    }

    std::vector<Rational> parse_list(std::vector<std::string> const& items) {
      std::vector<Rational> out;
      for (auto const& s : items) {
        out.push_back(parse_rational(s));
      }
      return out;
    }

    json rat_list(std::vector<Rational> const& xs) {
      json a = json::array();
      for (auto const& x : xs) {
        a.push_back(rat(x));
      }
      return a;
    }

    std::pair<Rational, Rational> parse_range(std::string const& text) {
      auto colon = text.find(':');
      if (colon == std::string::npos) {
        Rational x = parse_rational(text);
        return {x, x};
      }
      return {parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1))};
    }

    std::vector<std::string> split(std::string const& text, char sep) {
      std::vector<std::string> out;
      std::string              cur;
      std::istringstream       in(text);
      while (std::getline(in, cur, sep)) {
        out.push_back(cur);
      }
      return out;
    }

    // "a,b,c,d;a,b,c,d" with interval "lo:hi"
    IFSInstance parse_ifs(std::string const& maps, std::string const& interval) {
      std::vector<MoebiusMap> fs;
      for (auto const& m : split(maps, ';')) {
        auto e = split(m, ',');
        if (e.size() != 4) {
          throw DomainError("map '" + m + "' needs four entries a,b,c,d");
        }
        fs.emplace_back(Matrix2{parse_rational(e[0]), parse_rational(e[1]), parse_rational(e[2]), parse_rational(e[3])});
      }
      if (fs.empty()) {
        throw DomainError("--maps lists no maps");
      }
      auto [lo, hi] = parse_range(interval);
      return make_ifs(std::move(fs), Interval(lo, hi));
    }

    json levels_json(std::vector<std::size_t> const& levels) {
      json a = json::array();
      for (auto n : levels) {
        a.push_back(n);
      }
      return a;
    }

    json bracket_json(DimensionBracket const& b) {
      return {{"level", b.level},     {"lower", b.lower},         {"upper", b.upper},
              {"midpoint", b.midpoint()}, {"C", rat(b.c_used)}, {"C_label", to_string(b.c_rigor)},
              {"gamma2", rat(b.gamma2)}};
    }

    // Largest level whose word count stays within the budget and the cap.
    std::size_t auto_level(std::size_t alphabet) {
      std::size_t level = 1;
      std::size_t words = alphabet;
      while (level < kernels::level_cap() && words * alphabet <= auto_word_budget) {
        words *= alphabet;
        ++level;
      }
      return level;
    }

    // ---- dim ---------------------------------------------------------------

    void bracket_rows(Report& r, IFSInstance const& ifs, std::vector<std::size_t> const& levels, Options const& o) {
      std::optional<Rational> c_user;
      if (!o.c_override.empty()) {
        c_user = parse_rational(o.c_override);
      }
      json rows = json::array();
      r.header  = {"level", "d_n", "residual", "iterations", "C", "C_label", "lower", "upper"};
      for (auto n : levels) {
        auto ld = solve_level_dimension(ifs, n, o.tol);
        auto c  = c_user ? *c_user : distortion_constant(ifs, n).c_emp;
        auto b  = bracket_from(ld, c, ifs.gamma_upper, c_user ? Rigor::user_supplied : Rigor::empirical);
        json row = bracket_json(b);
        row["d_n"]        = ld.d_n;
        row["residual"]   = ld.residual;
        row["iterations"] = ld.iterations;
        rows.push_back(row);
        r.rows.push_back({std::to_string(n), num(ld.d_n), num(ld.residual), std::to_string(ld.iterations),
                          to_string(c), to_string(b.c_rigor), num(b.lower), num(b.upper)});
      }
      r.result["levels"] = rows;
    }

    Report cmd_dim(Options const& o) {
      Report   r;
      Rational t     = parse_rational(o.t);
      auto     fam   = make_family(t);
      r.config       = {{"t", rat(t)}, {"tol", o.tol}, {"C", o.c_override.empty() ? json("auto") : json(o.c_override)}};
      r.result["t"]  = rat(t);

      if (o.subsystem.empty()) {
        auto levels = o.levels.empty() ? std::vector<std::size_t>{1, 2, 4, 8} : o.levels;
        r.config["levels"] = levels_json(levels);
        r.config["subsystem"] = nullptr;
        r.result["gamma"]  = {rat(fam.gamma_lower), rat(fam.gamma_upper)};
        bracket_rows(r, fam, levels, o);
        return r;
      }

      auto colon = o.subsystem.find(':');
      if (colon == std::string::npos) {
        throw DomainError("--subsystem expects full:N or tilde:N");
      }
      std::string kind = o.subsystem.substr(0, colon);
      std::size_t big_n = std::stoul(o.subsystem.substr(colon + 1));
      r.config["subsystem"] = o.subsystem;

      if (kind == "full") {
        auto rep = subsystem_dimension_report(t, big_n, o.tol);
        r.config["levels"] = nullptr;
        r.result["subsystem"] = {
            {"kind", "full"},
            {"N", big_n},
            {"d_N", rep.d_N.d_n},
            {"d_2N", rep.d_2N ? json(rep.d_2N->d_n) : json(nullptr)},
            {"s1", rep.s1},
            {"bracket", bracket_json(rep.subsystem_bracket)},
            {"tail_sum", rep.tail_sum},
            {"tail_lower_bound", rep.tail_lower_bound},
            {"epsilon_proxy", rep.epsilon_proxy},
            {"error_bound", rep.error_bound},
            {"upper_holds", rep.upper_holds},
            {"lower_applies", rep.lower_applies},
            {"lower_holds", rep.lower_holds},
            {"tail_holds", rep.tail_holds},
        };
        r.header = {"N", "d_N", "s1", "d_N_minus_1_over_2N", "tail_sum", "error_bound", "upper_holds", "lower_holds"};
        r.rows.push_back({std::to_string(big_n), num(rep.d_N.d_n), num(rep.s1),
                          num(rep.d_N.d_n - 1.0 / (2.0 * static_cast<double>(big_n))), num(rep.tail_sum),
                          num(rep.error_bound), rep.upper_holds ? "true" : "false",
                          rep.lower_holds ? "true" : "false"});
        for (auto const& v : rep.violations) {
          r.violations.push_back("subsystem bracket: " + v);
        }
        return r;
      }
      if (kind != "tilde") {
        throw DomainError("--subsystem expects full:N or tilde:N, got '" + o.subsystem + "'");
      }
      auto sub    = build_subsystem({t, big_n, SubsystemVariant::tilde_v3});
      auto levels = o.levels.empty() ? std::vector<std::size_t>{1, 2, 3} : o.levels;
      r.config["levels"]    = levels_json(levels);
      r.result["subsystem"] = {{"kind", "tilde"}, {"N", big_n}, {"maps", sub.size()}};
      bracket_rows(r, sub, levels, o);
      return r;
    }

    // ---- pressure ----------------------------------------------------------

    Report cmd_pressure(Options const& o) {
      Report   r;
      Rational t      = parse_rational(o.t);
      auto     fam    = make_family(t);
      auto     levels = o.levels.empty() ? std::vector<std::size_t>{1, 2, 4} : o.levels;
      auto     ss     = parse_list(o.s_values);
      r.config        = {{"t", rat(t)}, {"levels", levels_json(levels)}, {"s", rat_list(ss)}};
      r.header        = {"level", "s", "pressure"};
      json rows       = json::array();
      for (auto n : levels) {
        for (auto const& s : ss) {
          auto p = pressure_estimate(fam, n, to_double(s));
          rows.push_back({{"level", n}, {"s", rat(s)}, {"pressure", p.value}});
          r.rows.push_back({std::to_string(n), to_string(s), num(p.value)});
        }
      }
      r.result = {{"t", rat(t)}, {"estimates", rows}};
      return r;
    }

    // ---- separation --------------------------------------------------------

    json separation_json(SeparationReport const& s) {
      return {{"metric", to_string(s.variant)},
              {"level", s.level},
              {"words", s.words},
              {"delta_n", rat(s.delta_n)},
              {"c_n", s.c_n},
              {"witness", s.witness ? pair_json(*s.witness) : json(nullptr)},
              {"delta_n_unequal", opt_rat(s.delta_n_unequal)},
              {"c_n_unequal", s.c_n_unequal},
              {"witness_unequal", s.witness_unequal ? pair_json(*s.witness_unequal) : json(nullptr)}};
    }

    Report cmd_separation(Options const& o) {
      Report      r;
      Rational    t   = parse_rational(o.t);
      auto        fam = make_family(t);
      std::size_t n   = o.n == 0 ? 4 : o.n;
      auto probes = o.probes.empty() ? std::vector<Rational>{t / 3, 2 * t / 3} : parse_list(o.probes);
      r.config    = {{"t", rat(t)}, {"n", n}, {"probes", rat_list(probes)}};

      auto overlaps = exact_overlap_search(fam, n);
      auto sesc     = sesc_metric(fam, n, probes);
      auto dio      = diophantine_metric(fam, n);
      r.result      = {{"t", rat(t)},
                       {"overlaps", pairs_json(overlaps.overlaps)},
                       {"words_searched", overlaps.searched},
                       {"sesc", separation_json(sesc)},
                       {"diophantine", separation_json(dio)}};
      r.header      = {"metric", "level", "delta_n", "c_n", "delta_n_unequal", "c_n_unequal"};
      for (auto const* s : {&sesc, &dio}) {
        r.rows.push_back({to_string(s->variant), std::to_string(n), to_string(s->delta_n), num(s->c_n),
                          s->delta_n_unequal ? to_string(*s->delta_n_unequal) : "", num(s->c_n_unequal)});
      }
      return r;
    }

    // ---- freeness ----------------------------------------------------------

    Report cmd_freeness(Options const& o) {
      Report   r;
      Rational t = parse_rational(o.t);
      make_family(t);
      r.config = {{"t", rat(t)}, {"depth", o.depth}, {"samples", o.samples}, {"max_len", o.max_len}, {"seed", o.seed}};

      auto overlaps  = exact_overlap_search(t, o.depth);
      auto conj      = conjugacy_check();
      auto residues  = residue_freeness_check(o.samples, o.max_len, o.seed);
      auto relations = relation_search_ABC(t, o.depth);

      json failing = json::array();
      for (auto const& c : residues.checks) {
        if (!c.ok && failing.size() < 32) {
          failing.push_back({{"x", to_string(c.x)},
                             {"y", to_string(c.y)},
                             {"xe_bottom_left", c.xe_bottom_left.get_str()},
                             {"yf_bottom_left", c.yf_bottom_left.get_str()}});
        }
      }
      r.result = {
          {"t", rat(t)},
          {"overlaps", pairs_json(overlaps.overlaps)},
          {"conjugacy",
           {{"ok", conj.ok()}, {"R", matrix_json(conj.r)}, {"E", matrix_json(conj.e)}, {"F", matrix_json(conj.f)}}},
          {"residues",
           {{"ok", residues.violations == 0},
            {"samples", residues.checks.size()},
            {"violations", residues.violations},
            {"failing", failing}}},
          {"relations",
           {{"depth", relations.depth},
            {"image_A", interval_json(relations.image_a)},
            {"image_B", interval_json(relations.image_b)},
            {"image_C", interval_json(relations.image_c)},
            {"pruning_valid", relations.pruning_valid},
            {"searched", relations.searched},
            {"found", pairs_json(relations.relations)}}},
      };
      r.header = {"check", "result"};
      r.rows   = {{"overlaps", std::to_string(overlaps.overlaps.size())},
                  {"conjugacy", conj.ok() ? "ok" : "FAIL"},
                  {"residues", residues.violations == 0 ? "ok" : std::to_string(residues.violations) + " violations"},
                  {"relations", std::to_string(relations.relations.size())}};
      if (!conj.ok()) {
        r.violations.push_back("conjugacy: 2RA^-1R^-1 = E and 2RB^-1R^-1 = F");
      }
      if (residues.violations != 0) {
        r.violations.push_back("residues: XE(2,1) = 0 and YF(2,1) = 1 mod 4");
      }
      return r;
    }

    // ---- lemmas ------------------------------------------------------------

    json counterexamples_json(std::vector<Counterexample> const& cs) {
      json a = json::array();
      for (auto const& c : cs) {
        if (a.size() == 32) {
          break;
        }
        a.push_back({{"v", to_string(c.v)}, {"w", to_string(c.w)}, {"x", opt_rat(c.x)}, {"what", c.what}});
      }
      return a;
    }

    Report cmd_lemmas(Options const& o) {
      Report   r;
      Rational t = parse_rational(o.t);
      if (sgn(t) <= 0) {
        throw DomainError("parameter t must be positive, got " + to_string(t));
      }
      bool const all = o.lemma == "all";
      if (!all && o.lemma != "2" && o.lemma != "3" && o.lemma != "4" && o.lemma != "cert") {
        throw DomainError("--lemma expects 2, 3, 4, cert or all");
      }
      r.config    = {{"lemma", o.lemma}, {"k", o.k}, {"t", rat(t)}};
      json out    = json::array();
      r.header    = {"lemma", "k", "t", "verdict", "detail"};
      auto yes_no = [](bool b) { return b ? "true" : "false"; };

      if (all || o.lemma == "2") {
        auto res = verify_lemma2(o.k, t);
        out.push_back({{"lemma", "2"},
                       {"k", o.k},
                       {"t", rat(t)},
                       {"verdict", res.verdict},
                       {"consecutive_pairs", res.consecutive_pairs},
                       {"all_pairs", res.all_pairs},
                       {"sample_points", res.sample_points},
                       {"counterexamples", counterexamples_json(res.counterexamples)}});
        r.rows.push_back({"2", std::to_string(o.k), to_string(t), yes_no(res.verdict),
                          std::to_string(res.all_pairs) + " ordered pairs"});
        if (!res.verdict) {
          r.violations.push_back("cylinder order: lex order implies the cylinder order");
        }
      }
      if (all || o.lemma == "3") {
        Lemma3Options lo;
        lo.t_max = parse_rational(o.t_max);
        if (!o.resolution.empty()) {
          lo.resolution = parse_rational(o.resolution);
        }
        r.config["v"]          = o.v;
        r.config["w"]          = o.w;
        r.config["t_max"]      = rat(lo.t_max);
        r.config["resolution"] = rat(lo.resolution);
        auto v                 = parse_word(o.v);
        auto w                 = parse_word(o.w);
        auto res               = lemma3_find_threshold(v, w, lo);
        out.push_back({{"lemma", "3"},
                       {"v", to_string(v)},
                       {"w", to_string(w)},
                       {"m", res.shape.m},
                       {"u", to_string(res.shape.u)},
                       {"verdict", res.found ? "FOUND" : "NOT_FOUND"},
                       {"threshold", res.found ? rat(res.threshold) : json(nullptr)},
                       {"last_failure", opt_rat(res.last_failure)},
                       {"persists_2x", res.persists_2x},
                       {"persists_4x", res.persists_4x},
                       {"inequality_consistent", res.inequality_consistent},
                       {"grid_points", res.grid_points},
                       {"best_gap", rat(res.best_gap)},
                       {"best_gap_t", rat(res.best_gap_t)}});
        r.rows.push_back({"3", std::to_string(v.size()), res.found ? to_string(res.threshold) : "",
                          res.found ? "FOUND" : "NOT_FOUND", "v=" + to_string(v) + " w=" + to_string(w)});
        if (!res.inequality_consistent) {
          r.violations.push_back("consecutive threshold: closed-form inequality agrees with the exact endpoint check");
        }
      }
      if (all || o.lemma == "4") {
        auto res       = verify_lemma4(o.k, t);
        bool predicted = t < res.threshold;
        json ce        = json::array();
        for (auto const& p : res.counterexamples) {
          if (ce.size() == 32) {
            break;
          }
          ce.push_back(pair_json(p));
        }
        out.push_back({{"lemma", "4"},
                       {"k", o.k},
                       {"t", rat(t)},
                       {"verdict", res.verdict},
                       {"extremal_disjoint", res.extremal_disjoint},
                       {"threshold", rat(res.threshold)},
                       {"pairs_checked", res.pairs_checked},
                       {"counterexamples", ce}});
        r.rows.push_back({"4", std::to_string(o.k), to_string(t), yes_no(res.verdict),
                          "threshold " + to_string(res.threshold)});
        if (t < 3 && !res.verdict) {
          r.violations.push_back("uniform disjointness: disjointness for all t in (0, 3)");
        }
        if (res.extremal_disjoint != predicted) {
          r.violations.push_back("uniform disjointness: extremal pair disjoint iff t < 3/(1 - 4^-k)");
        }
      }
      if (all || o.lemma == "cert") {
        std::size_t n    = o.n == 0 ? 3 : o.n;
        auto        grid = parse_list(o.grid);
        r.config["n"]    = n;
        r.config["grid"] = rat_list(grid);
        auto cert        = nondegeneracy_certificate(n, grid);
        json wit         = json::array();
        for (auto const& p : cert.witnesses) {
          wit.push_back({{"v", to_string(p.v)}, {"w", to_string(p.w)}, {"t", rat(p.t)}, {"relation", to_string(p.relation)}});
        }
        json window = nullptr;
        if (cert.window) {
          window = {{"n", cert.window->n},
                    {"t_lo", rat(cert.window->t_lo)},
                    {"t_hi", rat(cert.window->t_hi)},
                    {"kind", to_string(cert.window->kind)}};
        }
        out.push_back({{"lemma", "cert"},
                       {"n", n},
                       {"verdict", cert.complete ? "COMPLETE" : "INCOMPLETE"},
                       {"pairs", cert.pairs},
                       {"window", window},
                       {"witnesses", wit},
                       {"failing", pairs_json(cert.failing)}});
        r.rows.push_back({"cert", std::to_string(n), "", cert.complete ? "COMPLETE" : "INCOMPLETE",
                          std::to_string(cert.pairs) + " pairs, " + std::to_string(cert.failing.size()) + " failing"});
      }
      r.result = {{"results", out}};
      return r;
    }

    // ---- attractor ---------------------------------------------------------

    json box_json(BoxCountEstimate const& b) {
      json levels = json::array();
      for (auto const& l : b.levels) {
        levels.push_back({{"level", l.level},
                          {"epsilon", rat(l.epsilon)},
                          {"count", l.count},
                          {"log_inv_eps", l.log_inv_eps},
                          {"log_count", l.log_count}});
      }
      return {{"levels", levels},
              {"slope", b.slope},
              {"intercept", b.intercept},
              {"std_error", b.std_error},
              {"note", "union-of-cylinders surrogate, upper-biased"}};
    }

    void box_rows(Report& r, std::string const& system, BoxCountEstimate const& b) {
      for (auto const& l : b.levels) {
        r.rows.push_back({system, std::to_string(l.level), to_string(l.epsilon), std::to_string(l.count),
                          num(l.log_inv_eps), num(l.log_count), num(b.slope), num(b.std_error)});
      }
    }

    Report cmd_attractor(Options const& o) {
      Report r;
      r.header = {"system", "level", "epsilon", "count", "log_inv_eps", "log_count", "slope", "std_error"};

      if (!o.maps.empty()) {
        auto ifs    = parse_ifs(o.maps, o.interval);
        auto levels = o.levels.empty() ? std::vector<std::size_t>{4, 5, 6, 7, 8} : o.levels;
        r.config    = {{"maps", o.maps}, {"interval", o.interval}, {"levels", levels_json(levels)}};
        auto box    = box_counting(ifs, levels);
        r.result    = {{"user_system", box_json(box)}};
        box_rows(r, "user", box);
        return r;
      }

      Rational t      = parse_rational(o.t);
      auto     fam    = make_family(t);
      auto     levels = o.levels.empty() ? std::vector<std::size_t>{4, 5, 6, 7, 8} : o.levels;
      std::size_t n   = o.n == 0 ? 2 : o.n;
      auto [lo, hi]   = parse_range(o.t_range);
      Rational res    = o.resolution.empty() ? make_rational(1, 4) : parse_rational(o.resolution);
      r.config        = {{"t", rat(t)},
                         {"levels", levels_json(levels)},
                         {"n", n},
                         {"t_range", {rat(lo), rat(hi)}},
                         {"resolution", rat(res)},
                         {"tol", o.tol}};

      auto box           = box_counting(fam, levels);
      r.result["t"]      = rat(t);
      r.result["family"] = box_json(box);
      box_rows(r, "family", box);

      auto search = find_common_disjoint_parameter(n, lo, hi, res);
      json scan   = json::array();
      for (auto const& p : search.scan) {
        scan.push_back({{"t", rat(p.t)}, {"overlapping_pairs", p.overlapping_pairs}});
      }
      json cd = {{"n", n},
                 {"verdict", search.found ? "FOUND" : "NOT_FOUND"},
                 {"best_t", rat(search.best_t)},
                 {"best_overlaps", search.best_overlaps},
                 {"violating_pairs", pairs_json(search.violating_pairs)},
                 {"scan", scan}};
      if (search.found) {
        cd["window"]         = {{"t_lo", rat(search.window->t_lo)},
                                {"t_hi", rat(search.window->t_hi)},
                                {"kind", to_string(search.window->kind)}};
        cd["representative"] = rat(*search.representative);

        auto sub        = build_subsystem({*search.representative, n, SubsystemVariant::tilde_v3});
        auto top        = o.bracket_level != 0 ? o.bracket_level : auto_level(sub.size());
        std::vector<std::size_t> sub_levels;
        for (std::size_t l = top > 3 ? top - 3 : 1; l <= top; ++l) {
          sub_levels.push_back(l);
        }
        auto sub_box     = box_counting(sub, sub_levels);
        auto ld          = solve_level_dimension(sub, top, o.tol);
        auto bracket     = bracket_from(ld, distortion_constant(sub, top).c_emp, sub.gamma_upper);
        double diff      = std::abs(sub_box.slope - bracket.midpoint());
        r.config["bracket_level"] = top;
        cd["subsystem_box"]       = box_json(sub_box);
        cd["subsystem_bracket"]   = bracket_json(bracket);
        cd["slope_minus_midpoint"] = sub_box.slope - bracket.midpoint();
        cd["match"]               = diff <= 0.05;
        box_rows(r, "subsystem", sub_box);
        if (diff > 0.05) {
          r.violations.push_back("OSC dimension match: box-count slope within 0.05 of the bracket midpoint");
        }
      }
      r.result["common_disjoint"] = cd;
      return r;
    }

    // ---- measure -----------------------------------------------------------

    Report cmd_measure(Options const& o) {
      Report   r;
      Rational t   = parse_rational(o.t);
      auto     fam = make_family(t);
      std::vector<std::size_t> levels = o.levels;
      if (levels.empty()) {
        levels.push_back(o.n == 0 ? 10 : o.n);
      }
      std::vector<double> qs;
      for (auto const& q : parse_list(o.qs)) {
        qs.push_back(to_double(q));
      }
      r.config = {{"t", rat(t)}, {"levels", levels_json(levels)}, {"s", o.s_measure}, {"q", o.qs}, {"tol", o.tol}};

      r.header = {"level", "s", "cylinders", "point_cylinders", "ball_mass", "r_n", "quotient", "weight_sum",
                  "min_weight"};
      for (double q : qs) {
        r.header.push_back("D_" + num(q));
      }
      json rows = json::array();
      for (auto n : levels) {
        double s = o.s_measure == "auto" ? solve_level_dimension(fam, n, o.tol).d_n : to_double(parse_rational(o.s_measure));
        auto   m = natural_measure_stats(fam, n, s, qs);
        json lq = json::array();
        for (auto const& x : m.lq) {
          lq.push_back({{"q", x.q}, {"sum", x.sum}, {"tau", x.tau}, {"D_q", x.d_q}});
        }
        rows.push_back({{"level", n},
                        {"s", s},
                        {"cylinders", m.cylinders},
                        {"point_cylinders", m.point_cylinders},
                        {"ball_mass", m.ball_mass},
                        {"r_n", rat(m.r_n)},
                        {"local_dimension_quotient", m.local_dimension_quotient},
                        {"s_minus_quotient", s - m.local_dimension_quotient},
                        {"weight_sum", m.weight_sum},
                        {"min_weight", m.min_weight},
                        {"lq", lq}});
        std::vector<std::string> row{std::to_string(n),     num(s),          std::to_string(m.cylinders),
                                     std::to_string(m.point_cylinders), num(m.ball_mass), to_string(m.r_n),
                                     num(m.local_dimension_quotient), num(m.weight_sum), num(m.min_weight)};
        for (auto const& x : m.lq) {
          row.push_back(num(x.d_q));
        }
        r.rows.push_back(std::move(row));
        if (m.point_cylinders != (std::size_t{1} << n)) {
          r.violations.push_back("measure: level-" + std::to_string(n) + " cylinders containing 0 number 2^n");
        }
        if (std::abs(m.weight_sum - 1.0) > 1e-9) {
          r.violations.push_back("measure: weights sum to 1");
        }
      }
      r.result = {{"t", rat(t)}, {"levels", rows}};
      return r;
    }

    // ---- output ------------------------------------------------------------

    std::string csv_field(std::string const& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
      }
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') {
          q += '"';
        }
        q += c;
      }
      return q + "\"";
    }

    void write_csv_row(std::ostream& os, std::vector<std::string> const& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << csv_field(row[i]);
      }
      os << '\n';
    }

    void write_table(std::ostream& os, std::string const& command, Report const& r) {
      std::vector<std::size_t> width(r.header.size(), 0);
      auto widen = [&](std::vector<std::string> const& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
          width[i] = std::max(width[i], row[i].size());
        }
      };
      widen(r.header);
      for (auto const& row : r.rows) {
        widen(row);
      }
      os << "ifslab " << command << '\n';
      auto print = [&](std::vector<std::string> const& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
          os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << row[i];
        }
        os << '\n';
      };
      print(r.header);
      for (auto const& row : r.rows) {
        print(row);
      }
      for (auto const& v : r.violations) {
        os << "VIOLATION " << v << '\n';
      }
    }

    void emit(std::ostream& os, std::string const& command, Report const& r, json const& config, double wall_ms,
              bool csv) {
      if (csv) {
        os << "# schema=" << schema << " tool_version=" << IFSLAB_VERSION << " command=" << command << '\n';
        os << "# resolved_config=" << config.dump() << '\n';
        write_csv_row(os, r.header);
        for (auto const& row : r.rows) {
          write_csv_row(os, row);
        }
        for (auto const& v : r.violations) {
          os << "# violation=" << v << '\n';
        }
        os << "# wall_time_ms=" << num(wall_ms) << '\n';
        return;
      }
      json doc = {{"schema", schema},
                  {"tool_version", IFSLAB_VERSION},
                  {"command", command},
                  {"resolved_config", config},
                  {"result", r.result},
                  {"violations", r.violations},
                  {"wall_time_ms", wall_ms}};
      os << doc.dump(2) << '\n';
    }

  }  // namespace

  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    Options  o;
    CLI::App app{"Exact computations for a parametrized family of Moebius IFS", "ifslab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(IFSLAB_VERSION));
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out, "write the report to this file instead of stdout");
    app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--tol", o.tol, "Bowen solver tolerance")->check(CLI::PositiveNumber);

    auto* dim = app.add_subcommand("dim", "level-n dimensions d_n and their brackets");
    dim->add_option("--t", o.t, "parameter, p/q or decimal");
    dim->add_option("--levels", o.levels)->delimiter(',');
    dim->add_option("--C", o.c_override, "distortion constant override");
    dim->add_option("--subsystem", o.subsystem, "full:N or tilde:N");

    auto* pressure = app.add_subcommand("pressure", "level-n pressure estimates");
    pressure->add_option("--t", o.t);
    pressure->add_option("--levels", o.levels)->delimiter(',');
    pressure->add_option("--s", o.s_values)->delimiter(',');

    auto* separation = app.add_subcommand("separation", "exact overlaps and separation metrics");
    separation->add_option("--t", o.t);
    separation->add_option("--n", o.n, "level (default 4)");
    separation->add_option("--probes", o.probes)->delimiter(',');

    auto* freeness = app.add_subcommand("freeness", "conjugacy, residue and relation checks");
    freeness->add_option("--t", o.t);
    freeness->add_option("--depth", o.depth);
    freeness->add_option("--samples", o.samples);
    freeness->add_option("--max-len", o.max_len)->check(CLI::PositiveNumber);
    freeness->add_option("--seed", o.seed);

    auto* lemmas = app.add_subcommand("lemmas", "cylinder order lemmas and non-degeneracy certificates");
    lemmas->add_option("--lemma", o.lemma, "2, 3, 4, cert or all");
    lemmas->add_option("--k", o.k);
    lemmas->add_option("--t", o.t);
    lemmas->add_option("--v", o.v);
    lemmas->add_option("--w", o.w);
    lemmas->add_option("--t-max", o.t_max);
    lemmas->add_option("--resolution", o.resolution);
    lemmas->add_option("--n", o.n, "certificate level (default 3)");
    lemmas->add_option("--grid", o.grid)->delimiter(',');

    auto* attractor = app.add_subcommand("attractor", "box counting and common-disjointness search");
    attractor->add_option("--t", o.t);
    attractor->add_option("--levels", o.levels)->delimiter(',');
    attractor->add_option("--n", o.n, "subsystem level (default 2)");
    attractor->add_option("--t-range", o.t_range, "lo:hi");
    attractor->add_option("--resolution", o.resolution);
    attractor->add_option("--bracket-level", o.bracket_level);
    attractor->add_option("--maps", o.maps, "user system a,b,c,d;a,b,c,d");
    attractor->add_option("--interval", o.interval, "invariant interval lo:hi for --maps");

    auto* measure = app.add_subcommand("measure", "natural-measure statistics at 0");
    measure->add_option("--t", o.t);
    measure->add_option("--n", o.n, "level (default 10)");
    measure->add_option("--levels", o.levels)->delimiter(',');
    measure->add_option("--s", o.s_measure, "exponent or auto (= d_n)");
    measure->add_option("--q", o.qs)->delimiter(',');

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? exit_ok : exit_usage;
    }

    auto* sub = app.get_subcommands().front();
    if (o.threads > 0) {
      omp_set_num_threads(o.threads);
    }

    auto   start = std::chrono::steady_clock::now();
    Report report;
    try {
      std::string const& name = sub->get_name();
      if (name == "dim") {
        report = cmd_dim(o);
      } else if (name == "pressure") {
        report = cmd_pressure(o);
      } else if (name == "separation") {
        report = cmd_separation(o);
      } else if (name == "freeness") {
        report = cmd_freeness(o);
      } else if (name == "lemmas") {
        report = cmd_lemmas(o);
      } else if (name == "attractor") {
        report = cmd_attractor(o);
      } else {
        report = cmd_measure(o);
      }
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (std::invalid_argument const& e) {
      err << "error: bad number: " << e.what() << '\n';
      return exit_usage;
    } catch (std::out_of_range const& e) {
      err << "error: number out of range: " << e.what() << '\n';
      return exit_usage;
    }
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    json config = report.config;
    config["format"]  = o.format;
    config["threads"] = o.threads;
    if (!config.contains("tol")) {
      config["tol"] = o.tol;
    }

    write_table(err, sub->get_name(), report);
    bool const csv = o.format == "csv";
    if (o.out.empty()) {
      emit(out, sub->get_name(), report, config, wall_ms, csv);
    } else {
      std::ofstream file(o.out);
      if (!file) {
        err << "error: cannot open " << o.out << '\n';
        return exit_usage;
      }
      emit(file, sub->get_name(), report, config, wall_ms, csv);
    }
    if (!report.violations.empty()) {
      for (auto const& v : report.violations) {
        err << "property violated: " << v << '\n';
      }
      return exit_violation;
    }
    return exit_ok;
  }

}  // namespace ifslab::cli
