// Command-line surface for the free-group toolkit: word operations,
// Whitehead automorphisms, TS'/L(eps) membership, filling certification,
// and the sampling experiments. All randomized commands require an explicit
// --seed so runs are reproducible.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "freegrp/counting.hpp"
#include "freegrp/experiments.hpp"
#include "freegrp/genericity.hpp"
#include "freegrp/splittings.hpp"
#include "freegrp/text.hpp"
#include "freegrp/whitehead.hpp"

namespace {

constexpr int kExitMember = 0;
constexpr int kExitNonMember = 1;
constexpr int kExitParseError = 2;
constexpr int kExitUnknown = 3;

std::vector<long> parse_lengths(const std::string& s) {
  std::vector<long> out;
  auto parse_one = [](const std::string& tok) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size() || v < 0 || v > 1e12)
      throw std::invalid_argument("bad length '" + tok + "'");
    return static_cast<long>(v + 0.5);
  };
  if (s.find(':') != std::string::npos) {
    long parts[3] = {0, 0, 1};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      std::size_t next = s.find(':', pos);
      std::string tok = (next == std::string::npos) ? s.substr(pos) : s.substr(pos, next - pos);
      parts[i] = parse_one(tok);
      if (next == std::string::npos) {
        if (i < 2) throw std::invalid_argument("length range is start:stop:step");
        break;
      }
      pos = next + 1;
    }
    if (parts[2] <= 0) throw std::invalid_argument("length step must be positive");
    for (long n = parts[0]; n <= parts[1]; n += parts[2]) out.push_back(n);
  } else {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t next = s.find(',', pos);
      std::string tok = (next == std::string::npos) ? s.substr(pos) : s.substr(pos, next - pos);
      if (!tok.empty()) out.push_back(parse_one(tok));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  if (out.empty()) throw std::invalid_argument("no lengths given");
  return out;
}

std::string describe_witness(const freegrp::WitnessResult& res) {
  std::string out = "witness: " + res.witness->to_string();
  out += "; side=" + std::to_string(res.ellipticity->vertex_side);
  out += "; conjugator=" + freegrp::to_string(res.ellipticity->conjugator);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace freegrp;

  CLI::App app{"freegrp: computing with Whitehead automorphisms, generic sets and filling elements"};
  app.require_subcommand(1);
  app.fallthrough();  // --rank may follow the subcommand

  int rank = 2;
  app.add_option("--rank", rank, "rank of the free group (2..26)")->capture_default_str();

  std::string word_arg, auto_arg, eps_arg = "1/30", set_arg = "TS'", lengths_arg, output_arg;
  std::uint64_t seed = 0;
  long bound = 4, samples = 10000, length = 60;
  int reps = 9;

  auto* reduce = app.add_subcommand("reduce", "freely reduce a word");
  reduce->add_option("word", word_arg)->required();

  auto* cyc = app.add_subcommand("cyclic-reduce", "cyclic reduction: core and conjugator");
  cyc->add_option("word", word_arg)->required();

  auto* power = app.add_subcommand("power", "root and exponent of a cyclic word");
  power->add_option("word", word_arg)->required();

  auto* apply_cmd = app.add_subcommand("apply", "apply a Whitehead automorphism");
  apply_cmd->add_option("--auto", auto_arg, "automorphism: 'a->b, b->A' or '(a; {a,b})'")
      ->required();
  apply_cmd->add_option("word", word_arg)->required();

  auto* minimize = app.add_subcommand("minimize", "Whitehead minimization trace");
  minimize->add_option("word", word_arg)->required();

  auto* ts = app.add_subcommand("ts-check", "TS' membership (exit 0 member / 1 non-member)");
  ts->add_option("word", word_arg)->required();

  auto* leps = app.add_subcommand("l-eps-check", "L(eps) membership of the cyclic reduction");
  leps->add_option("--epsilon", eps_arg, "window half-width, as a rational p/q")->required();
  leps->add_option("word", word_arg)->required();

  auto* cert = app.add_subcommand("fill-cert", "filling certificate via TS' or a witness search");
  cert->add_option("word", word_arg)->required();
  cert->add_option("--bound", bound, "edge-word length bound for the witness search")
      ->capture_default_str();

  auto* gen = app.add_subcommand("genericity", "per-sphere density estimation and decay fit");
  gen->add_option("--set", set_arg, "TS', L, or L'")->capture_default_str();
  gen->add_option("--lengths", lengths_arg, "start:stop:step or comma list")->required();
  gen->add_option("--samples", samples, "samples per length")->capture_default_str();
  gen->add_option("--seed", seed, "master seed")->required();
  gen->add_option("--epsilon", eps_arg, "epsilon for the L sets")->capture_default_str();
  gen->add_option("--output", output_arg, "write CSV here instead of stdout");

  auto* bench = app.add_subcommand("bench-membership", "timing of the linear-time TS' test");
  bench->add_option("--lengths", lengths_arg, "comma list, e.g. 1e3,1e4,1e5,1e6")->required();
  bench->add_option("--reps", reps, "repetitions per length")->capture_default_str();
  bench->add_option("--seed", seed, "master seed")->required();

  auto* cross = app.add_subcommand("cross-validate", "TS' vs non-filling witness consistency");
  cross->add_option("--samples", samples, "samples per category")->capture_default_str();
  cross->add_option("--length", length, "length of the TS' sample words")->capture_default_str();
  cross->add_option("--bound", bound, "edge-word length bound")->capture_default_str();
  cross->add_option("--seed", seed, "master seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reduce) {
      std::cout << to_string(parse_word(word_arg, rank)) << "\n";
      return 0;
    }

    if (*cyc) {
      auto red = cyclic_reduce(parse_word(word_arg, rank));
      std::cout << "core=" << to_string(red.core) << "\n"
                << "conjugator=" << to_string(red.conjugator) << "\n";
      return 0;
    }

    if (*power) {
      auto pd = is_proper_power(cyclic_core(parse_word(word_arg, rank)));
      std::cout << "root=" << to_string(pd.root) << "\n"
                << "exponent=" << pd.exponent << "\n";
      return 0;
    }

    if (*apply_cmd) {
      WhiteheadAut aut = parse_whitehead(auto_arg, rank);
      std::cout << to_string(apply(aut, parse_word(word_arg, rank))) << "\n";
      return 0;
    }

    if (*minimize) {
      CyclicWord start = cyclic_core(parse_word(word_arg, rank));
      auto res = whitehead_minimize(start, rank);
      std::cout << "start=" << to_string(start) << "\n";
      CyclicWord cur = start;
      for (std::size_t i = 0; i < res.applied.size(); ++i) {
        cur = cyclic_core(apply(res.applied[i], cur.to_word()));
        std::cout << "step " << (i + 1) << ": " << to_string(res.applied[i]) << " -> "
                  << to_string(cur) << "\n";
      }
      std::cout << "minimal=" << to_string(res.minimal) << "\n"
                << "steps=" << res.applied.size() << "\n";
      return 0;
    }

    if (*ts) {
      auto check = ts_check_word(parse_word(word_arg, rank), rank);
      switch (check.verdict) {
        case TsCheck::Verdict::member:
          std::cout << "TS-MEMBER\n";
          return kExitMember;
        case TsCheck::Verdict::empty_word:
          std::cout << "NOT-TS: empty word\n";
          return kExitNonMember;
        case TsCheck::Verdict::proper_power:
          std::cout << "NOT-TS: proper power\n";
          return kExitNonMember;
        case TsCheck::Verdict::type2_nonincrease:
          std::cout << "NOT-TS: type II non-increase at " << to_string(*check.type2_offender)
                    << "\n";
          return kExitNonMember;
        case TsCheck::Verdict::type1_fixes_class:
          std::cout << "NOT-TS: type I fixer " << to_string(*check.type1_offender) << "\n";
          return kExitNonMember;
      }
      return kExitParseError;
    }

    if (*leps) {
      Rational eps = parse_rational(eps_arg);
      if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
      CyclicWord core = cyclic_core(parse_word(word_arg, rank));
      if (core.empty()) {
        std::cout << "NOT-IN-L(eps): empty cyclic reduction\n";
        return kExitNonMember;
      }
      auto fail = l_epsilon_failure(core, rank, eps);
      if (!fail) {
        std::cout << "IN-L(eps)\n";
        return kExitMember;
      }
      std::string what = fail->is_digram
                             ? std::string("digram ") + letter_to_char(fail->x) +
                                   letter_to_char(fail->y)
                             : std::string("letter ") + letter_to_char(fail->x);
      std::cout << "NOT-IN-L(eps): " << what << " frequency " << to_string(fail->frequency)
                << " outside (" << to_string(fail->target - eps) << ", "
                << to_string(fail->target + eps) << ")\n";
      return kExitNonMember;
    }

    if (*cert) {
      Word w = parse_word(word_arg, rank);
      if (in_TS_prime(w, rank)) {
        std::cout << "FILLING (TS')\n";
        return kExitMember;
      }
      auto res = find_nonfilling_witness(w, rank, bound);
      if (res.witness) {
        std::cout << "NON-FILLING (" << describe_witness(res) << ")\n";
        return kExitNonMember;
      }
      std::cout << "UNKNOWN (no witness at bound " << bound << ")\n";
      return kExitUnknown;
    }

    if (*gen) {
      GenericSet set = parse_set_id(set_arg);
      Rational eps = parse_rational(eps_arg);
      auto lengths = parse_lengths(lengths_arg);
      auto rows = estimate_density(set, rank, lengths, samples, eps, seed);
      std::ofstream file;
      if (!output_arg.empty()) {
        file.open(output_arg);
        if (!file) throw std::invalid_argument("cannot open output file '" + output_arg + "'");
      }
      std::ostream& os = output_arg.empty() ? std::cout : file;
      write_density_csv(os, rows);
      char fit_line[160];
      try {
        auto fit = fit_decay(rows);
        std::snprintf(fit_line, sizeof(fit_line),
                      "# fit: alpha=%.6f beta=%.6f r_squared=%.6f rows_used=%ld\n", fit.alpha,
                      fit.beta, fit.r_squared, fit.rows_used);
      } catch (const std::invalid_argument&) {
        std::snprintf(fit_line, sizeof(fit_line), "# fit: unavailable (<3 unsaturated rows)\n");
      }
      os << fit_line;
      if (!output_arg.empty()) std::cout << "wrote " << output_arg << "\n";
      return 0;
    }

    if (*bench) {
      auto lengths = parse_lengths(lengths_arg);
      auto rows = bench_linear_membership(rank, lengths, reps, seed);
      std::cout << "n,median_ns,ns_per_letter,doubling_ratio\n";
      for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%ld,%.1f,%.3f,%.3f\n", r.n, r.median_ns,
                      r.ns_per_letter, r.doubling_ratio);
        std::cout << line;
      }
      return 0;
    }

    if (*cross) {
      auto rep = cross_validate_filling(rank, samples, length, bound, seed);
      std::cout << "ts_samples=" << rep.ts_samples
                << " witness_violations=" << rep.ts_witness_violations << "\n"
                << "vertex_samples=" << rep.vertex_samples
                << " ts_violations=" << rep.vertex_ts_violations << "\n"
                << "primitive_samples=" << rep.primitive_samples
                << " ts_violations=" << rep.primitive_ts_violations << "\n"
                << "result=" << (rep.ok() ? "OK" : "VIOLATIONS") << "\n";
      return rep.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }
  return kExitParseError;
}
