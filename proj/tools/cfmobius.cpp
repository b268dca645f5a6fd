// cfmobius: continued-fraction digits of (a x + b) / (c x + d), partial
// quotient bounds, and randomized bound sweeps.
//
// Exit status: 0 clean, 1 a mathematical violation or mismatch was found,
// 2 usage, parse or pole error.

#include <cfmobius/bounds.hpp>
#include <cfmobius/cf_input.hpp>
#include <cfmobius/errors.hpp>
#include <cfmobius/harness.hpp>
#include <cfmobius/matrix.hpp>
#include <cfmobius/oracle.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kClean = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct RangeArgs {
  std::string D = "1:30";
  std::string B = "1:5";
};

std::pair<cfm::Int, cfm::Int> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    cfm::Int v = cfm::parse_int(text);
    return {v, v};
  }
  return {cfm::parse_int(text.substr(0, colon)), cfm::parse_int(text.substr(colon + 1))};
}

void add_sweep_options(CLI::App* cmd, cfm::SweepConfig& config, RangeArgs& ranges, std::string& format,
                       std::string& out_path) {
  cmd->add_option("--D", ranges.D, "determinant range lo:hi")->capture_default_str();
  cmd->add_option("--B", ranges.B, "digit window range lo:hi (cells take B1 <= B2 inside it)")
      ->capture_default_str();
  cmd->add_option("--trials", config.trials, "trials per (D, B1, B2) cell")->capture_default_str();
  cmd->add_option("--max-preperiod", config.max_preperiod)->capture_default_str();
  cmd->add_option("--max-period", config.max_period)->capture_default_str();
  cmd->add_option("--digits", config.transducer_digits, "transducer digits checked per trial")
      ->capture_default_str();
  cmd->add_option("--seed", config.seed)->capture_default_str();
  cmd->add_option("--jobs", config.jobs, "worker threads")->capture_default_str();
  cmd->add_flag("--timing", config.timing, "record wall time per trial (reports are then not reproducible)");
  cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", out_path, "report file (default: no report)");
}

void write_report(const cfm::SweepResult& result, const std::string& format, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw cfm::Error("cannot open " + path);
  if (format == "csv")
    cfm::write_csv(out, result);
  else
    cfm::write_json(out, result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued-fraction digits of integer Moebius maps, with partial quotient bounds"};
  app.require_subcommand(1);

  std::string matrix_text, x_text;
  std::size_t count = 0;

  auto* transduce = app.add_subcommand("transduce", "digits of M x through the streaming transducer");
  transduce->add_option("-m,--matrix", matrix_text, "a,b,c,d")->required();
  transduce->add_option("-x,--cf", x_text, "continued fraction, e.g. \"[2;(2)]\"")->required();
  transduce->add_option("-n,--count", count, "digits to print (default 20 for periodic x, all for finite x)");

  std::string B1_text, B2_text, D_text;
  auto* bound = app.add_subcommand("bound", "eventual digit bounds for digits in [B1,B2] and determinant D");
  bound->add_option("B1", B1_text)->required();
  bound->add_option("B2", B2_text)->required();
  bound->add_option("D", D_text)->required();

  bool inject_fault = false;
  std::size_t verify_count = 100;
  auto* verify = app.add_subcommand("verify", "compare the transducer with both oracles");
  verify->add_option("-m,--matrix", matrix_text, "a,b,c,d")->required();
  verify->add_option("-x,--cf", x_text)->required();
  verify->add_option("-n,--count", verify_count)->capture_default_str();
  verify->add_flag("--inject-fault", inject_fault, "corrupt one transducer digit (self-test)");

  cfm::SweepConfig config;
  RangeArgs ranges;
  std::string format = "json", out_path;
  auto* sweep = app.add_subcommand("sweep", "randomized check of the digit bound over (D, B1, B2) cells");
  add_sweep_options(sweep, config, ranges, format, out_path);

  std::size_t top = 10;
  bool skip_designated = false;
  auto* search = app.add_subcommand("search", "list the trials closest to the bound");
  add_sweep_options(search, config, ranges, format, out_path);
  search->add_option("--top", top)->capture_default_str();
  search->add_flag("--skip-designated", skip_designated, "leave out M = [[0,1],[D,0]], x = [B2;(B1,B2)]");

  std::size_t oracle_count = 20;
  std::string oracle_matrix = "1,0,0,1";
  auto* oracle = app.add_subcommand("oracle", "exact value and expansion of M x by the oracles");
  oracle->add_option("-m,--matrix", oracle_matrix)->capture_default_str();
  oracle->add_option("-x,--cf", x_text)->required();
  oracle->add_option("-n,--count", oracle_count)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*transduce) {
      auto m = cfm::IntMatrix2::parse(matrix_text);
      auto x = cfm::CFInput::parse(x_text);
      if (count == 0 && x.periodic()) count = 20;
      std::cout << cfm::format_transduce(cfm::transduce(m, x, count)) << '\n';
      return kClean;
    }
    if (*bound) {
      cfm::BoundParams p(cfm::parse_int(B1_text), cfm::parse_int(B2_text), cfm::parse_int(D_text));
      std::cout << "theorem1=" << cfm::theorem1_bound(p) << '\n'
                << "stambul(K=" << p.B2 << ",D=" << p.D << ")=" << cfm::stambul_bound(p.B2, p.D) << '\n'
                << "lagarias_shallit(K=" << p.B2 << ",D=" << p.D << ")=" << cfm::lagarias_shallit_bound(p.B2, p.D)
                << '\n'
                << "y0=" << cfm::y0(p.B1, p.B2).literal() << '\n'
                << "x0=" << cfm::x0(p.B1, p.B2).literal() << '\n';
      return kClean;
    }
    if (*verify) {
      auto m = cfm::IntMatrix2::parse(matrix_text);
      auto x = cfm::CFInput::parse(x_text);
      cfm::VerifyReport r = cfm::verify(m, x, verify_count, inject_fault);
      std::cout << "transducer " << cfm::format_digits(r.transducer, false) << '\n'
                << "surd       " << cfm::format_digits(r.surd_oracle, false) << '\n'
                << "gosper     " << cfm::format_digits(r.gosper, false) << '\n';
      if (r.agree()) {
        std::cout << "agree on " << r.compared << " digits\n";
        return kClean;
      }
      std::cout << "mismatch at digit " << *r.first_mismatch << '\n';
      return kViolation;
    }
    if (*sweep || *search) {
      std::tie(config.D_min, config.D_max) = parse_range(ranges.D);
      std::tie(config.B_min, config.B_max) = parse_range(ranges.B);
      cfm::SweepResult result =
          *sweep ? cfm::run_sweep(config) : cfm::run_search(config, !skip_designated, top);
      write_report(result, format, out_path);
      if (*search) {
        for (const cfm::TrialReport& t : result.trials) {
          std::cout << "ratio " << t.observed << "/" << t.theorem1 << "  D=" << t.D << " B1=" << t.B1
                    << " B2=" << t.B2 << "  M=" << t.matrix.literal() << "  x=" << t.x.literal()
                    << "  Mx=" << t.image.literal() << (t.designated ? "  (designated)" : "") << '\n';
        }
      }
      std::cout << cfm::summary_line(result.summary) << '\n';
      return result.summary.clean() ? kClean : kViolation;
    }
    if (*oracle) {
      auto m = cfm::IntMatrix2::parse(oracle_matrix);
      auto x = cfm::CFInput::parse(x_text);
      if (x.periodic()) {
        cfm::Surd s = cfm::apply_moebius_surd(m, cfm::cf_to_surd(x));
        std::cout << "value  " << s.literal() << '\n' << "cf     " << cfm::surd_cf(s).literal() << '\n';
      } else {
        cfm::Rational v = cfm::evaluate(x);
        cfm::Rational den = m.c() * v + m.d();
        if (den == 0) throw cfm::PoleError("M x is infinite");
        cfm::Rational value = cfm::Rational(m.a() * v + m.b()) / den;
        std::cout << "value  " << value.get_str() << '\n' << "cf     " << cfm::rational_cf(value).literal() << '\n';
      }
      std::cout << "gosper " << cfm::format_digits(cfm::gosper_emit(m, x, oracle_count), false) << '\n';
      return kClean;
    }
  } catch (const cfm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
