#include <cfmobius/harness.hpp>

#include <cfmobius/errors.hpp>
#include <cfmobius/normalizer.hpp>
#include <cfmobius/oracle.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace cfm {

namespace {

constexpr std::size_t kInputDigitCap = 1'000'000;

// G z for a fixed integer matrix G, where z arrives as continued-fraction
// digits together with a lower bound on the part not yet seen.
class LftStream {
 public:
  explicit LftStream(const IntMatrix2& g) : a_(g.a()), b_(g.b()), c_(g.c()), d_(g.d()) {}

  void absorb(const Int& t) {
    Int na = a_ * t + b_;
    Int nc = c_ * t + d_;
    b_ = std::move(a_);
    d_ = std::move(c_);
    a_ = std::move(na);
    c_ = std::move(nc);
  }

  // z in [lower, inf]. Emits when both ends of the image interval have
  // positive denominators and share a floor.
  std::optional<Int> try_emit(const Int& lower) {
    Int lo_num = a_ * lower + b_;
    Int lo_den = c_ * lower + d_;
    if (c_ < 0 && lo_den < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
      lo_num = -lo_num;
      lo_den = -lo_den;
    }
    if (c_ <= 0 || lo_den <= 0) return std::nullopt;
    Int q = floor_div(a_, c_);
    if (q != floor_div(lo_num, lo_den)) return std::nullopt;
    Int ra = a_ - q * c_;
    Int rb = b_ - q * d_;
    a_ = std::move(c_);
    b_ = std::move(d_);
    c_ = std::move(ra);
    d_ = std::move(rb);
    return q;
  }

  std::optional<Int> lower_bound(const Int& lower) const {
    Int lo_num = a_ * lower + b_;
    Int lo_den = c_ * lower + d_;
    if (sign(c_) != sign(lo_den) || c_ == 0) return std::nullopt;
    return std::min(floor_div(a_, c_), floor_div(lo_num, lo_den));
  }

  // z == +inf exactly.
  const Int& num() const { return a_; }
  const Int& den() const { return c_; }

 private:
  Int a_, b_, c_, d_;
};

std::vector<Int> canonical(const std::vector<Int>& digits) {
  if (digits.empty()) return digits;
  return expand(CFInput(digits.front(), std::vector<Int>(digits.begin() + 1, digits.end())), 0);
}

void finish_counted(TransduceResult& result, std::vector<Int> full, std::size_t count) {
  if (count != 0 && full.size() > count) {
    result.provisional = full[count];
    full.resize(count);
    result.complete = false;
  } else {
    result.complete = true;
  }
  result.digits = std::move(full);
}

TransduceResult transduce_direct(const IntMatrix2& m, const CFInput& x, std::size_t count) {
  TransduceResult result;
  result.direct = true;
  Transducer t(m);
  std::size_t i = 0;
  while (count == 0 || t.finalized().size() < count) {
    if (x.has_digit(i)) {
      if (i >= kInputDigitCap) throw LivenessError("transduce: input digit cap reached");
      t.feed(x.digit(i++));
    } else {
      t.flush();
      break;
    }
  }
  std::vector<Int> out(t.finalized().begin(), t.finalized().end());
  if (t.terminal()) {
    finish_counted(result, canonical(out), count);
    return result;
  }
  if (out.size() > count) {
    result.provisional = out[count];
    out.resize(count);
  } else {
    result.provisional = t.provisional().value_or(0);
  }
  result.digits = std::move(out);
  return result;
}

TransduceResult transduce_pipeline(const IntMatrix2& m, const CFInput& x, std::size_t count) {
  TransduceResult result;
  Prepared prep = prepare(m, x);
  Transducer t(prep.core);
  LftStream stream(prep.decomposition.generator_product());
  std::size_t absorbed = 0;
  std::size_t next_input = 0;
  auto lower = [&] {
    Int l = t.provisional().value_or(0);
    if (absorbed > 0 && l < 1) l = 1;
    return l;
  };

  std::vector<Int> out;
  while (count == 0 || out.size() < count) {
    if (!t.terminal()) {
      if (auto q = stream.try_emit(lower())) {
        out.push_back(std::move(*q));
        continue;
      }
    }
    if (t.terminal()) break;
    if (prep.tail.has_digit(next_input)) {
      if (next_input >= kInputDigitCap) throw LivenessError("transduce: input digit cap reached");
      t.feed(prep.tail.digit(next_input++));
    } else {
      t.flush();
    }
    for (auto fin = t.finalized(); absorbed < fin.size(); ++absorbed) stream.absorb(fin[absorbed]);
  }

  if (t.terminal()) {
    // Everything has been absorbed; the remaining value is exactly num/den.
    if (stream.den() == 0) {
      if (out.empty()) throw PoleError("M x is infinite for M = " + m.literal() + ", x = " + x.literal());
    } else {
      CFInput rest = rational_cf(stream.num(), stream.den());
      std::vector<Int> tail = expand(rest, 0);
      out.insert(out.end(), tail.begin(), tail.end());
    }
    finish_counted(result, std::move(out), count);
    return result;
  }
  result.provisional = stream.lower_bound(lower());
  result.digits = std::move(out);
  return result;
}

Rational apply_rational(const IntMatrix2& m, const Rational& v) {
  Rational den = m.c() * v + m.d();
  if (den == 0) throw PoleError("M x is infinite for M = " + m.literal() + ", x = " + v.get_str());
  return Rational(m.a() * v + m.b()) / den;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

nlohmann::ordered_json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return to_string(v);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

struct Cell {
  Int D, B1, B2;
};

std::vector<Cell> cells_of(const SweepConfig& config) {
  std::vector<Cell> cells;
  for (Int D = config.D_min; D <= config.D_max; ++D)
    for (Int B1 = config.B_min; B1 <= config.B_max; ++B1)
      for (Int B2 = B1; B2 <= config.B_max; ++B2) cells.push_back({D, B1, B2});
  return cells;
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::size_t cell, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

Int uniform(std::mt19937_64& engine, const Int& lo, const Int& hi) {
  std::uniform_int_distribution<long> dist(lo.get_si(), hi.get_si());
  return Int(dist(engine));
}

CFInput random_periodic(std::mt19937_64& engine, const Cell& cell, const SweepConfig& config) {
  Int head = uniform(engine, cell.B1, cell.B2);
  std::uniform_int_distribution<std::size_t> pre_len(0, config.max_preperiod);
  std::uniform_int_distribution<std::size_t> period_len(1, config.max_period);
  std::vector<Int> pre(pre_len(engine)), period(period_len(engine));
  for (Int& d : pre) d = uniform(engine, cell.B1, cell.B2);
  for (Int& d : period) d = uniform(engine, cell.B1, cell.B2);
  return CFInput(std::move(head), std::move(pre), std::move(period));
}

// Runs fn(i) for i in [0, n) on `jobs` threads; results land by index.
template <class Fn>
std::vector<TrialReport> parallel_trials(std::size_t n, std::size_t jobs, Fn fn) {
  std::vector<TrialReport> out(n);
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

SweepSummary summarize(const std::vector<TrialReport>& trials) {
  SweepSummary s;
  s.trials = trials.size();
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialReport& t = trials[i];
    if (t.observed > t.theorem1) ++s.theorem1_violations;
    if (t.oracle_mismatch) ++s.oracle_mismatches;
    s.lemma_violations += t.audit.violations();
    s.audit += t.audit;
    if (!s.max_ratio_index || t.observed * trials[*s.max_ratio_index].theorem1 >
                                  trials[*s.max_ratio_index].observed * t.theorem1) {
      s.max_ratio_index = i;
    }
  }
  return s;
}

}  // namespace

std::vector<Int> expand(const CFInput& x, std::size_t count) {
  std::vector<Int> out;
  for (std::size_t i = 0; x.has_digit(i) && (count == 0 || i < count); ++i) out.push_back(x.digit(i));
  return out;
}

std::string format_digits(const std::vector<Int>& digits, bool closed) {
  std::string s = "[";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i == 1) s += ';';
    if (i > 1) s += ',';
    s += to_string(digits[i]);
  }
  if (closed) s += ']';
  return s;
}

TransduceResult transduce(const IntMatrix2& m, const CFInput& x, std::size_t count) {
  if (count == 0 && x.periodic()) throw DomainError("transduce: a periodic input needs a digit count");
  if (m.nonnegative() && classify(m) == MatrixClass::E2 && x.head() >= 1) return transduce_direct(m, x, count);
  if (!x.has_digit(1)) {
    TransduceResult result;
    finish_counted(result, expand(rational_cf(apply_rational(m, x.head())), 0), count);
    return result;
  }
  return transduce_pipeline(m, x, count);
}

std::string format_transduce(const TransduceResult& result) {
  std::string s = format_digits(result.digits, result.complete);
  if (!result.complete) {
    s += " | provisional >= ";
    s += result.provisional ? to_string(*result.provisional) : std::string("?");
  }
  return s;
}

VerifyReport verify(const IntMatrix2& m, const CFInput& x, std::size_t count, bool inject_fault) {
  VerifyReport r;
  if (x.periodic()) {
    r.surd_oracle = expand(surd_cf(apply_moebius_surd(m, cf_to_surd(x))), count);
  } else {
    r.surd_oracle = expand(rational_cf(apply_rational(m, evaluate(x))), count);
  }
  r.gosper = gosper_emit(m, x, count);
  r.transducer = transduce(m, x, count).digits;
  if (inject_fault && !r.transducer.empty()) r.transducer[r.transducer.size() / 2] += 1;

  const std::size_t n = std::min({r.surd_oracle.size(), r.gosper.size(), r.transducer.size()});
  for (std::size_t i = 0; i < n; ++i) {
    if (r.transducer[i] != r.surd_oracle[i] || r.gosper[i] != r.surd_oracle[i]) {
      r.first_mismatch = i;
      break;
    }
  }
  r.compared = r.first_mismatch.value_or(n);
  const bool same_length = r.surd_oracle.size() == r.gosper.size() && r.gosper.size() == r.transducer.size();
  if (!r.first_mismatch && !same_length) r.first_mismatch = n;
  return r;
}

void SweepConfig::validate() const {
  if (D_min < 1 || D_max < D_min) throw DomainError("sweep: need 1 <= D_min <= D_max");
  if (D_max > 256) throw DomainError("sweep: D_max is limited to 256");
  if (B_min < 1 || B_max < B_min) throw DomainError("sweep: need 1 <= B_min <= B_max");
  if (!B_max.fits_slong_p()) throw DomainError("sweep: B_max too large");
  if (max_period < 1) throw DomainError("sweep: max_period must be >= 1");
  if (transducer_digits < 1) throw DomainError("sweep: transducer_digits must be >= 1");
}

double TrialReport::ratio() const { return observed.get_d() / theorem1.get_d(); }

E2Sampler::E2Sampler(const Int& D) {
  if (D < 1 || D > 256) throw DomainError("E2Sampler: D must lie in [1, 256]");
  const long n = D.get_si();
  for (long a = 0; a <= n; ++a) {
    for (long b = 0; a + b <= n; ++b) {
      for (long c = 0; c <= n; ++c) {
        auto keep = [&](long d) {
          if ((a - c) * (b - d) < 0) pool_.emplace_back(a, b, c, d);
        };
        if (a == 0) {
          if (b * c == n)
            for (long d = 0; c + d <= n; ++d) keep(d);
          continue;
        }
        for (long s : {n, -n}) {
          long num = s + b * c;
          if (num % a == 0 && num / a >= 0 && c + num / a <= n) keep(num / a);
        }
      }
    }
  }
}

const IntMatrix2& E2Sampler::pick(std::mt19937_64& engine) const {
  std::uniform_int_distribution<std::size_t> dist(0, pool_.size() - 1);
  return pool_[dist(engine)];
}

TrialReport evaluate_trial(const IntMatrix2& m, const CFInput& x, const Int& B1, const Int& B2,
                           std::size_t transducer_digits) {
  TrialReport r;
  r.matrix = m;
  r.x = x;
  r.B1 = B1;
  r.B2 = B2;
  r.D = m.abs_det();
  r.theorem1 = theorem1_bound(BoundParams(B1, B2, r.D));
  r.stambul = stambul_bound(B2, r.D);
  r.lagarias_shallit = lagarias_shallit_bound(B2, r.D);

  PeriodicImage image = periodic_max_quotient(m, x);
  r.image = image.image;
  r.observed = image.max_quotient;
  if (r.observed > r.theorem1) {
    r.violations.push_back("theorem1: observed " + to_string(r.observed) + " > bound " + to_string(r.theorem1));
  }

  Transducer t(m);
  for (std::size_t i = 0; t.finalized().size() < transducer_digits; ++i) t.feed(x.digit(i));
  const std::vector<Int> reference = expand(r.image, transducer_digits);
  auto fin = t.finalized();
  while (r.agreement < transducer_digits && fin[r.agreement] == reference[r.agreement]) ++r.agreement;
  if (r.agreement < transducer_digits) {
    r.oracle_mismatch = true;
    r.violations.push_back("oracle: transducer digit " + std::to_string(r.agreement) + " differs");
  }

  r.audit = lemma1_audit(t, {B2, DigitWindow{B1, B2}});
  if (!r.audit.clean()) r.violations.push_back("lemma: " + std::to_string(r.audit.violations()) + " violations");
  return r;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<Cell> cells = cells_of(config);
  std::map<long, E2Sampler> samplers;
  for (const Cell& c : cells) samplers.try_emplace(c.D.get_si(), c.D);

  SweepResult result;
  result.trials = parallel_trials(cells.size() * config.trials, config.jobs, [&](std::size_t index) {
    const std::size_t ci = index / config.trials;
    const std::size_t ti = index % config.trials;
    const Cell& cell = cells[ci];
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 engine = trial_engine(config.seed, ci, ti);
    const IntMatrix2& m = samplers.at(cell.D.get_si()).pick(engine);
    CFInput x = random_periodic(engine, cell, config);
    TrialReport r = evaluate_trial(m, x, cell.B1, cell.B2, config.transducer_digits);
    r.cell = ci;
    r.trial = ti;
    if (config.timing) {
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
  });
  result.summary = summarize(result.trials);
  return result;
}

SweepResult run_search(const SweepConfig& config, bool include_designated, std::size_t top) {
  SweepResult result = run_sweep(config);
  if (include_designated) {
    const std::vector<Cell> cells = cells_of(config);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      const Cell& cell = cells[ci];
      TrialReport r = evaluate_trial(IntMatrix2(0, 1, cell.D, 0), CFInput(cell.B2, {}, {cell.B1, cell.B2}), cell.B1,
                                     cell.B2, config.transducer_digits);
      r.cell = ci;
      r.trial = config.trials;
      r.designated = true;
      result.trials.push_back(std::move(r));
    }
  }
  result.summary = summarize(result.trials);
  std::stable_sort(result.trials.begin(), result.trials.end(), [](const TrialReport& l, const TrialReport& r) {
    return l.observed * r.theorem1 > r.observed * l.theorem1;
  });
  if (result.trials.size() > top) result.trials.resize(top);
  result.summary.max_ratio_index.reset();
  if (!result.trials.empty()) result.summary.max_ratio_index = 0;
  return result;
}

void write_json(std::ostream& out, const SweepResult& result) {
  out << "[\n";
  for (const TrialReport& t : result.trials) {
    nlohmann::ordered_json j;
    j["type"] = "trial";
    j["cell"] = t.cell;
    j["trial"] = t.trial;
    j["matrix"] = t.matrix.literal();
    j["det"] = int_json(t.matrix.det());
    j["x"] = t.x.literal();
    j["B1"] = int_json(t.B1);
    j["B2"] = int_json(t.B2);
    j["D"] = int_json(t.D);
    j["theorem1"] = int_json(t.theorem1);
    j["stambul"] = int_json(t.stambul);
    j["lagarias_shallit"] = int_json(t.lagarias_shallit);
    j["image"] = t.image.literal();
    j["observed"] = int_json(t.observed);
    j["ratio"] = fmt_double(t.ratio());
    j["agreement"] = t.agreement;
    j["oracle_mismatch"] = t.oracle_mismatch;
    j["interior_checked"] = t.audit.interior_checked;
    j["interior_violations"] = t.audit.interior_violations;
    j["final_checked"] = t.audit.final_checked;
    j["final_violations"] = t.audit.final_violations;
    j["corner_checked"] = t.audit.corner_checked;
    j["corner_violations"] = t.audit.corner_violations;
    j["x0_checked"] = t.audit.x0_checked;
    j["x0_violations"] = t.audit.x0_violations;
    j["y0_checked"] = t.audit.y0_checked;
    j["y0_violations"] = t.audit.y0_violations;
    j["y0_secondary_checked"] = t.audit.y0_secondary_checked;
    j["y0_secondary_violations"] = t.audit.y0_secondary_violations;
    j["designated"] = t.designated;
    j["violations"] = t.violations;
    if (t.wall_ms) j["wall_ms"] = *t.wall_ms;
    out << "  " << j.dump() << ",\n";
  }
  const SweepSummary& s = result.summary;
  nlohmann::ordered_json j;
  j["type"] = "summary";
  j["trials"] = s.trials;
  j["theorem1_violations"] = s.theorem1_violations;
  j["oracle_mismatches"] = s.oracle_mismatches;
  j["lemma_violations"] = s.lemma_violations;
  j["lemma_checked"] = s.audit.interior_checked + s.audit.final_checked + s.audit.corner_checked +
                       s.audit.x0_checked + s.audit.y0_checked + s.audit.y0_secondary_checked;
  if (s.max_ratio_index && *s.max_ratio_index < result.trials.size()) {
    const TrialReport& t = result.trials[*s.max_ratio_index];
    j["max_ratio"] = fmt_double(t.ratio());
    j["max_ratio_cell"] = t.cell;
    j["max_ratio_trial"] = t.trial;
  }
  out << "  " << j.dump() << "\n]\n";
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "cell,trial,matrix,det,x,B1,B2,D,theorem1,stambul,lagarias_shallit,image,observed,ratio,"
         "agreement,oracle_mismatch,lemma_checked,lemma_violations,designated,violations";
  const bool timing = std::any_of(result.trials.begin(), result.trials.end(),
                                  [](const TrialReport& t) { return t.wall_ms.has_value(); });
  if (timing) out << ",wall_ms";
  out << '\n';
  for (const TrialReport& t : result.trials) {
    const LemmaCheckLog& a = t.audit;
    std::size_t checked = a.interior_checked + a.final_checked + a.corner_checked + a.x0_checked + a.y0_checked +
                          a.y0_secondary_checked;
    out << t.cell << ',' << t.trial << ',' << csv_quote(t.matrix.literal()) << ',' << to_string(t.matrix.det())
        << ',' << csv_quote(t.x.literal()) << ',' << t.B1 << ',' << t.B2 << ',' << t.D << ',' << t.theorem1 << ','
        << t.stambul << ',' << t.lagarias_shallit << ',' << csv_quote(t.image.literal()) << ',' << t.observed << ','
        << fmt_double(t.ratio()) << ',' << t.agreement << ',' << (t.oracle_mismatch ? 1 : 0) << ',' << checked
        << ',' << a.violations() << ',' << (t.designated ? 1 : 0) << ',' << csv_quote(join(t.violations, "; "));
    if (timing) out << ',' << (t.wall_ms ? fmt_double(*t.wall_ms) : std::string());
    out << '\n';
  }
}

std::string summary_line(const SweepSummary& s) {
  std::ostringstream os;
  os << "trials=" << s.trials << " theorem1_violations=" << s.theorem1_violations
     << " oracle_mismatches=" << s.oracle_mismatches << " lemma_violations=" << s.lemma_violations;
  return os.str();
}

}  // namespace cfm
