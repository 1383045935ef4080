// Command-line front end: experiment orchestration, caching, and CSV/JSON
// emission with reproducible run manifests.

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wgl/wgl.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wgl;

namespace {

struct Options {
  std::uint64_t N = 1000;
  std::uint64_t H = 100;
  unsigned ell = 1;
  double eps = 1e-8;
  std::string zeros_path;
  std::uint64_t K = 100000;
  std::string out = "out";
  std::string format = "csv";
  unsigned threads = 0;  // 0 = auto
  std::string config;
  // command-specific extras
  double mu = 2.0;
  double xi = 0.5;
  std::vector<std::uint64_t> H_list;
  std::vector<std::uint64_t> n_list;
};

// held for the duration of a command; refuses concurrent writers
class DirLock {
public:
  explicit DirLock(const std::string& dir) : path_(dir + "/.wgl.lock") {
    fs::create_directories(dir);
    int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0)
      throw resource_error("output directory is locked by another run: " +
                           path_);
    ::close(fd);
  }
  ~DirLock() { std::remove(path_.c_str()); }

private:
  std::string path_;
};

unsigned effective_threads(const Options& o) {
  return o.threads ? o.threads : hardware_threads();
}

// sieve tables are cached on disk keyed by their limit
const VonMangoldtTable& get_table(std::uint64_t limit, const Options& o) {
  static std::map<std::uint64_t, VonMangoldtTable> cache;
  auto it = cache.find(limit);
  if (it != cache.end()) return it->second;
  const std::string dir = o.out + "/cache";
  fs::create_directories(dir);
  const std::string path = dir + "/table_" + std::to_string(limit) + ".bin";
  VonMangoldtTable t;
  bool loaded = false;
  if (fs::exists(path)) {
    try {
      t = load_table(path);
      loaded = (t.limit == limit);
    } catch (const data_error&) {
      loaded = false;  // stale cache: rebuild
    }
  }
  if (!loaded) {
    SieveOptions so;
    so.threads = effective_threads(o);
    t = build_prime_tables(limit, so);
    save_table(t, path);
  }
  return cache.emplace(limit, std::move(t)).first->second;
}

struct Emitter {
  const Options& opt;
  std::string command;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::string>> params;
  std::string zero_digest;
  std::uint64_t table_limit = 0;

  void param(const std::string& k, const std::string& v) {
    params.emplace_back(k, v);
  }

  std::string write(const ResultTable& t, const std::string& schema,
                    const std::vector<std::string>& comments = {}) {
    const bool csv = opt.format == "csv";
    const std::string path =
        opt.out + "/" + command + (csv ? ".csv" : ".json");
    RunManifest m;
    m.command = command;
    m.parameters = params;
    m.parameters.emplace_back("format", opt.format);
    m.parameters.emplace_back("threads", std::to_string(effective_threads(opt)));
    m.zero_file_digest = zero_digest;
    m.table_limit = table_limit;
    m.wall_time_ms = std::uint64_t(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start)
            .count());
    emit_with_manifest(path, csv ? render_csv(t, schema, comments)
                                 : render_json(t, schema),
                       m);
    std::fprintf(stderr, "wrote %s\n", path.c_str());
    return path;
  }
};

std::string u64s(std::uint64_t v) { return std::to_string(v); }

// ----- commands -------------------------------------------------------

void cmd_sieve(const Options& o) {
  Emitter em{o, "sieve"};
  em.param("N", u64s(o.N));
  const auto& t = get_table(o.N, o);
  em.table_limit = t.limit;
  Accumulator psi;
  for (std::uint64_t n = 2; n <= t.limit; ++n) psi.add(t.lambda[n]);
  ResultTable tab;
  tab.columns = {"limit", "prime_count", "psi", "psi_over_limit"};
  tab.add_row({u64s(t.limit), u64s(t.primes.size()),
               format_double(psi.value()),
               format_double(psi.value() / double(t.limit))});
  em.write(tab, "wgl.sieve v1");
}

void interval_gate(const Options& o) {
  if (o.H < 1 || o.H >= o.N)
    throw parameter_error("interval experiments need 1 <= H < N");
  double soft = double(o.N) / std::pow(std::log(double(o.N)), 1.5);
  if (double(o.H) >= soft)
    std::fprintf(stderr,
                 "warning: H=%llu above N/ln^1.5(N)=%.1f, outside the "
                 "asymptotic regime\n",
                 static_cast<unsigned long long>(o.H), soft);
  if (o.N < 1000)
    std::fprintf(stderr,
                 "note: small-N regime (N < 1000); results are reported "
                 "without band assertions\n");
}

void cmd_interval(const Options& o) {
  interval_gate(o);
  Emitter em{o, "interval"};
  em.param("N", u64s(o.N));
  em.param("H", u64s(o.H));
  const auto& t = get_table(o.N + o.H, o);
  em.table_limit = t.limit;
  auto r = interval_r_sum(o.N, o.H, t);
  double log4 = std::pow(std::log(double(o.N)), 4.0);
  ResultTable tab;
  tab.columns = {"N",     "H",          "sum_r",         "sum_r_weighted",
                 "main_term", "ratio",  "sum_r_over_HN", "pi_over_4",
                 "H_over_log4N"};
  tab.add_row({u64s(r.N), u64s(r.H), format_double(r.sum_r),
               format_double(r.sum_r_weighted), format_double(r.main_term),
               format_double(r.ratio),
               format_double(r.sum_r / (double(o.H) * double(o.N))),
               format_double(std::numbers::pi / 4.0),
               format_double(double(o.H) / log4)});
  em.write(tab, "wgl.interval v1");
}

void cmd_scaling(const Options& o) {
  if (o.H_list.size() < 3)
    throw parameter_error("scaling needs at least 3 H values");
  Options gate = o;
  for (auto h : o.H_list) {
    gate.H = h;
    interval_gate(gate);
  }
  Emitter em{o, "scaling"};
  em.param("N", u64s(o.N));
  std::string hs;
  std::uint64_t hmax = 0;
  for (auto h : o.H_list) {
    hs += (hs.empty() ? "" : ",") + u64s(h);
    hmax = std::max(hmax, h);
  }
  em.param("H", hs);
  const auto& t = get_table(o.N + hmax, o);
  em.table_limit = t.limit;

  const double L = std::log(double(o.N));
  ResultTable tab;
  tab.columns = {"N",        "H",        "sum_r",    "main_term",
                 "abs_error", "shape_sqrtH", "shape_N34", "shape_H2"};
  std::vector<double> lx, ly;
  for (auto h : o.H_list) {
    auto r = interval_r_sum(o.N, h, t);
    double err = std::abs(r.sum_r - r.main_term);
    tab.add_row(
        {u64s(o.N), u64s(h), format_double(r.sum_r),
         format_double(r.main_term), format_double(err),
         format_double(std::sqrt(double(h)) * double(o.N) * L * L),
         format_double(double(h) * std::pow(double(o.N), 0.75) * L * L * L),
         format_double(double(h) * double(h) * std::pow(L, 1.5))});
    if (err > 0.0) {
      lx.push_back(std::log(double(h)));
      ly.push_back(std::log(err));
    }
  }
  // least-squares slope of log|error| against log H
  double slope = 0.0;
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= double(lx.size());
    my /= double(lx.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      num += (lx[i] - mx) * (ly[i] - my);
      den += (lx[i] - mx) * (lx[i] - mx);
    }
    slope = den > 0 ? num / den : 0.0;
  }
  em.param("loglog_slope", format_double(slope));
  em.write(tab, "wgl.scaling v1", {"loglog_slope=" + format_double(slope)});
}

void cmd_explicit(const Options& o) {
  if (o.zeros_path.empty())
    throw data_error("explicit needs --zeros <path>");
  Emitter em{o, "explicit"};
  em.param("N", u64s(o.N));
  em.param("ell", std::to_string(o.ell));
  em.param("eps", format_double(o.eps));
  em.param("zeros", o.zeros_path);
  auto zeros = load_zeros(o.zeros_path, o.K > 0 ? o.K : std::size_t(-1));
  em.zero_digest = zeros.source_digest;
  std::size_t K = o.K;
  if (K > zeros.size()) {
    std::fprintf(stderr, "warning: K clipped to %zu available zeros\n",
                 zeros.size());
    K = zeros.size();
  }
  em.param("K", u64s(K));
  auto spec = truncation_cutoff(o.ell, o.N, o.eps);
  const auto& t = get_table(spec.M, o);
  em.table_limit = t.limit;

  const double tol = 0.1;
  ResultTable tab;
  tab.columns = {"alpha",        "main_abs",    "zero_sum_abs",
                 "residual_re",  "residual_im", "residual_abs",
                 "tail_bound"};
  std::size_t skipped = 0;
  for (int j = -10; j <= 10; ++j) {
    double alpha = double(j) / (10.0 * double(o.N));
    FrequencyPoint fp(alpha);
    double tb = zero_sum_tail_bound(fp, o.N, o.ell, zeros.gammas[K - 1]);
    if (!(tb <= tol)) {
      std::fprintf(stderr,
                   "skipping alpha=%.6g: tail bound %.3g above %.2g\n",
                   alpha, tb, tol);
      ++skipped;
      continue;
    }
    auto mt = main_term(fp, o.N, o.ell);
    auto zs = zero_sum(fp, o.N, o.ell, zeros, K);
    auto res = e_ell(fp, spec, t) + zs;
    tab.add_row({format_double(alpha), format_double(std::abs(mt)),
                 format_double(std::abs(zs)), format_double(res.real()),
                 format_double(res.imag()), format_double(std::abs(res)),
                 format_double(tb)});
  }
  if (tab.rows.empty())
    throw unreliable_error("explicit: tail bound above tolerance at every "
                           "grid point; supply more zeros");
  if (skipped)
    std::fprintf(stderr, "skipped %zu of 21 grid points\n", skipped);
  em.write(tab, "wgl.explicit v1");
}

void cmd_moments(const Options& o) {
  Emitter em{o, "moments"};
  em.param("N", u64s(o.N));
  em.param("eps", format_double(o.eps));
  auto s1 = truncation_cutoff(1, o.N, o.eps);
  auto s2 = truncation_cutoff(2, o.N, o.eps);
  const auto& t = get_table(std::max(s1.M, s2.M), o);
  em.table_limit = t.limit;
  unsigned th = effective_threads(o);

  double p2 = parseval_second_moment(1, s1, t);
  auto sch2 = EquispacedScheme::for_bandwidth(s1.M);
  auto grid1 = GridCache::instance().get(s1, sch2.nodes, t);
  double q2 = parallel_sum(grid1->P, th,
                           [&](std::size_t j) {
                             return std::complex<double>(
                                 std::norm(grid1->values[j]), 0.0);
                           })
                  .real() /
              double(grid1->P);
  double p4 = parseval_fourth_moment_s2(o.N, s2, t);
  double q4 = fourth_moment_quadrature(o.N, s2, t, th);

  ResultTable tab;
  tab.columns = {"quantity", "value"};
  tab.add_row({"second_moment_coefficients", format_double(p2)});
  tab.add_row({"second_moment_quadrature", format_double(q2)});
  tab.add_row({"fourth_moment_coefficients", format_double(p4)});
  tab.add_row({"fourth_moment_quadrature", format_double(q4)});
  em.write(tab, "wgl.moments v1");
}

void cmd_laplace(const Options& o) {
  Emitter em{o, "laplace"};
  em.param("N", u64s(o.N));
  em.param("mu", format_double(o.mu));
  DyadicScheme s;
  s.threads = effective_threads(o);
  ResultTable tab;
  tab.columns = {"n",       "mu",      "N",          "quad_re",
                 "quad_im", "closed_form", "abs_err", "scaled_err",
                 "quad_error_estimate", "unreliable"};
  for (std::uint64_t n = o.N; n <= 32 * o.N; n *= 2) {
    auto r = laplace_check(n, o.N, o.mu, s);
    // the flag means "identity error below quadrature resolution"; it is
    // surfaced per row rather than failing the run
    tab.add_row({u64s(n), format_double(o.mu), u64s(o.N),
                 format_double(r.quadrature_value.real()),
                 format_double(r.quadrature_value.imag()),
                 format_double(r.closed_form), format_double(r.abs_err),
                 format_double(r.scaled_err),
                 format_double(r.quad_error_estimate),
                 r.unreliable ? "1" : "0"});
  }
  em.write(tab, "wgl.laplace v1");
}

void cmd_reconstruct(const Options& o) {
  std::vector<std::uint64_t> ns = o.n_list;
  if (ns.empty()) ns = {3, 10};
  std::uint64_t nmax = 0;
  for (auto n : ns) {
    if (n < 2 || n > 2 * o.N)
      throw parameter_error("reconstruct: n must be in [2, 2N]");
    nmax = std::max(nmax, n);
  }
  Emitter em{o, "reconstruct"};
  em.param("N", u64s(o.N));
  em.param("eps", format_double(o.eps));
  std::string nss;
  for (auto n : ns) nss += (nss.empty() ? "" : ",") + u64s(n);
  em.param("n", nss);
  auto s1 = truncation_cutoff(1, o.N, o.eps);
  auto s2 = truncation_cutoff(2, o.N, o.eps);
  const auto& t = get_table(std::max(s1.M, nmax), o);
  em.table_limit = t.limit;
  auto vals = reconstruct_R_many(ns, o.N, s1, s2, t, effective_threads(o));
  ResultTable tab;
  tab.columns = {"n", "value", "sieve_value", "abs_gap"};
  for (std::size_t i = 0; i < ns.size(); ++i) {
    double sv = count_R(ns[i], t);
    tab.add_row({u64s(ns[i]), format_double(vals[i]), format_double(sv),
                 format_double(std::abs(vals[i] - sv))});
  }
  em.write(tab, "wgl.reconstruct v1");
}

void cmd_mean_square_st(const Options& o) {
  Emitter em{o, "mean-square-st"};
  em.param("N", u64s(o.N));
  em.param("H", u64s(o.H));
  em.param("ell", std::to_string(o.ell));
  const auto& t = get_table(std::max<std::uint64_t>(
                                wgl::detail::iroot(o.N, o.ell), 2),
                            o);
  em.table_limit = t.limit;
  DyadicScheme s;
  s.threads = effective_threads(o);
  auto r = mean_square_S_minus_T(o.N, o.ell, o.H, t, s);
  if (r.range_warning)
    std::fprintf(stderr,
                 "warning: H outside [N^(1-1/ell), N]; reported anyway\n");
  const double L = std::log(double(o.N));
  double shape = std::pow(double(o.N), 1.0 / o.ell) * L * L / double(o.H) +
                 double(o.H) * std::pow(double(o.N), 2.0 / o.ell - 2.0) * L * L;
  ResultTable tab;
  tab.columns = {"N",     "ell",           "H",
                 "value", "error_estimate", "normalized", "range_warning"};
  tab.add_row({u64s(o.N), std::to_string(o.ell), u64s(o.H),
               format_double(r.value), format_double(r.error_estimate),
               format_double(r.value / shape), r.range_warning ? "1" : "0"});
  em.write(tab, "wgl.mean_square_st v1");
}

void cmd_l2_moment(const Options& o) {
  Emitter em{o, "l2-moment"};
  em.param("N", u64s(o.N));
  em.param("ell", std::to_string(o.ell));
  em.param("xi", format_double(o.xi));
  em.param("eps", format_double(o.eps));
  auto spec = truncation_cutoff(o.ell, o.N, o.eps);
  const auto& t = get_table(spec.M, o);
  em.table_limit = t.limit;
  DyadicScheme s;
  s.threads = effective_threads(o);
  auto r = l2_error_moment(o.N, o.ell, o.xi, spec, t, s);
  const double L = std::log(double(o.N));
  double shape = std::pow(double(o.N), 1.0 / o.ell) * o.xi * L * L;
  ResultTable tab;
  tab.columns = {"N",     "ell",           "xi",
                 "value", "error_estimate", "normalized"};
  tab.add_row({u64s(o.N), std::to_string(o.ell), format_double(o.xi),
               format_double(r.value), format_double(r.error_estimate),
               format_double(r.value / shape)});
  em.write(tab, "wgl.l2_moment v1");
}

void cmd_decompose(const Options& o) {
  Emitter em{o, "decompose"};
  em.param("N", u64s(o.N));
  em.param("H", u64s(o.H));
  em.param("eps", format_double(o.eps));
  auto s1 = truncation_cutoff(1, o.N, o.eps);
  auto s2 = truncation_cutoff(2, o.N, o.eps);
  const auto& t = get_table(std::max(s1.M, o.N + o.H), o);
  em.table_limit = t.limit;
  DyadicScheme base;
  base.threads = effective_threads(o);
  auto rep = decompose_I123(o.N, o.H, s1, s2, t, base);
  double i1_expected = std::numbers::pi / (4.0 * std::exp(1.0)) *
                       double(o.H) * double(o.N);
  ResultTable tab;
  tab.columns = {"N",        "H",        "I1_re",  "I1_im",      "I2_re",
                 "I2_im",    "I3_re",    "I3_im",  "total_re",   "total_im",
                 "direct",   "max_rel_gap", "I1_expected",
                 "error_estimate", "unreliable"};
  tab.add_row({u64s(o.N), u64s(o.H), format_double(rep.I1.real()),
               format_double(rep.I1.imag()), format_double(rep.I2.real()),
               format_double(rep.I2.imag()), format_double(rep.I3.real()),
               format_double(rep.I3.imag()), format_double(rep.total.real()),
               format_double(rep.total.imag()), format_double(rep.direct),
               format_double(rep.max_rel_gap), format_double(i1_expected),
               format_double(rep.error_estimate),
               rep.unreliable ? "1" : "0"});
  em.write(tab, "wgl.decompose v1");
  if (rep.unreliable)
    throw unreliable_error(
        "decompose: adaptive error estimate above 1% of |I1|");
}

// config-file keys fill in flags the user did not pass
void apply_config(CLI::App* cmd, Options& o) {
  if (o.config.empty()) return;
  json cfg;
  try {
    cfg = json::parse(read_text_file(o.config));
  } catch (const json::parse_error& e) {
    throw data_error(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw data_error("config: expected a flat object");
  auto unset = [&](const char* flag) {
    auto* op = cmd->get_option_no_throw(flag);
    return op && op->count() == 0;
  };
  auto geti = [&](const char* key, auto& var) {
    if (cfg.contains(key)) var = cfg.at(key).template get<std::uint64_t>();
  };
  if (unset("--N")) geti("N", o.N);
  if (unset("--H") && cfg.contains("H")) {
    if (cfg.at("H").is_array())
      o.H_list = cfg.at("H").get<std::vector<std::uint64_t>>();
    else
      o.H = cfg.at("H").get<std::uint64_t>();
  }
  if (unset("--ell") && cfg.contains("ell")) o.ell = cfg.at("ell").get<unsigned>();
  if (unset("--eps") && cfg.contains("eps")) o.eps = cfg.at("eps").get<double>();
  if (unset("--zeros") && cfg.contains("zeros"))
    o.zeros_path = cfg.at("zeros").get<std::string>();
  if (unset("--K")) geti("K", o.K);
  if (unset("--out") && cfg.contains("out"))
    o.out = cfg.at("out").get<std::string>();
  if (unset("--format") && cfg.contains("format"))
    o.format = cfg.at("format").get<std::string>();
  if (unset("--threads") && cfg.contains("threads"))
    o.threads = cfg.at("threads").get<unsigned>();
  if (unset("--mu") && cfg.contains("mu")) o.mu = cfg.at("mu").get<double>();
  if (unset("--xi") && cfg.contains("xi")) o.xi = cfg.at("xi").get<double>();
  if (unset("--n") && cfg.contains("n"))
    o.n_list = cfg.at("n").get<std::vector<std::uint64_t>>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for prime-plus-two-prime-squares "
               "representations"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool wants_zeros = false) {
    c->add_option("--N", o.N, "principal size parameter");
    c->add_option("--ell", o.ell, "power in the damped series (1 or 2)");
    c->add_option("--eps", o.eps, "certified truncation tail bound");
    if (wants_zeros) {
      c->add_option("--zeros", o.zeros_path, "zero file, one gamma per line");
      c->add_option("--K", o.K, "number of zeros to use");
    }
    c->add_option("--out", o.out, "output directory");
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--threads", o.threads, "worker threads (0 = auto)");
    c->add_option("--config", o.config, "JSON config file (flags win)");
    return c;
  };

  auto* c_sieve = add_common(app.add_subcommand(
      "sieve", "build and cache the prime/von Mangoldt table"));
  auto* c_interval = add_common(app.add_subcommand(
      "interval", "short-interval average of the representation count"));
  c_interval->add_option("--H", o.H, "interval length");
  auto* c_scaling = add_common(app.add_subcommand(
      "scaling", "error scaling study across interval lengths"));
  c_scaling->add_option("--H", o.H_list, "interval lengths (3 or more)")
      ->delimiter(',');
  auto* c_explicit = add_common(
      app.add_subcommand("explicit",
                         "explicit-formula residual on a frequency grid"),
      true);
  auto* c_moments = add_common(app.add_subcommand(
      "moments", "second and fourth moments, coefficients vs quadrature"));
  auto* c_laplace = add_common(app.add_subcommand(
      "laplace", "Laplace-Gamma identity check on a doubling ladder"));
  c_laplace->add_option("--mu", o.mu, "exponent of the displacement power");
  auto* c_reconstruct = add_common(app.add_subcommand(
      "reconstruct", "recover weighted representation counts by quadrature"));
  c_reconstruct->add_option("--n", o.n_list, "targets to reconstruct")
      ->delimiter(',');
  auto* c_msst = add_common(app.add_subcommand(
      "mean-square-st", "mean square of the prime-minus-integer sum"));
  c_msst->add_option("--H", o.H, "window parameter (interval is [-1/H,1/H])");
  auto* c_l2 = add_common(app.add_subcommand(
      "l2-moment", "second moment of the explicit-formula error term"));
  c_l2->add_option("--xi", o.xi, "half-width of the frequency window");
  auto* c_decompose = add_common(app.add_subcommand(
      "decompose", "main/error split of the weighted interval integral"));
  c_decompose->add_option("--H", o.H, "interval length");

  try {
    app.parse(argc, argv);
    CLI::App* cmd = app.get_subcommands().front();
    apply_config(cmd, o);
    DirLock lock(o.out);
    GridCache::instance().set_directory(o.out + "/cache");

    if (cmd == c_sieve) cmd_sieve(o);
    else if (cmd == c_interval) cmd_interval(o);
    else if (cmd == c_scaling) cmd_scaling(o);
    else if (cmd == c_explicit) cmd_explicit(o);
    else if (cmd == c_moments) cmd_moments(o);
    else if (cmd == c_laplace) cmd_laplace(o);
    else if (cmd == c_reconstruct) cmd_reconstruct(o);
    else if (cmd == c_msst) cmd_mean_square_st(o);
    else if (cmd == c_l2) cmd_l2_moment(o);
    else if (cmd == c_decompose) cmd_decompose(o);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // any CLI misuse is a parameter error
  } catch (const parameter_error& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 2;
  } catch (const resource_error& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return 3;
  } catch (const data_error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 4;
  } catch (const unreliable_error& e) {
    std::fprintf(stderr, "unreliable numerics: %s\n", e.what());
    return 5;
  }
  return 0;
}
