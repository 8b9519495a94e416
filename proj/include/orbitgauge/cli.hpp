#pragma once

// Command-line front end: `orbitgauge <subcommand> [options]`.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbitgauge/bounds.hpp"
#include "orbitgauge/parallel.hpp"

namespace orbitgauge::cli {

struct RunConfig {
  std::string domain;
  std::string in_file;
  std::string cap;
  long ncap = 1;
  std::string format = "json";
  unsigned jobs = 0;
  std::string out_file;

  // subcommand-specific
  long degree = 0;
  std::string window;
  std::string a;
  long min_pn = 1;
  long max_pn = kDefaultPnCeiling;
  std::string beta;
  std::string rule;
  std::string eps;
  std::string zeta;
  std::string witness;
  long n = 1;
  std::vector<std::string> r_list;
  std::string x;
  std::vector<std::string> y;
  std::string surrogate_file;
  bool replay = false;
};

namespace detail {

inline std::vector<Rational> rational_list(const std::string& text, const std::string& path) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.message(), path);
    }
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "expected a comma-separated list of rationals", path);
  return out;
}

inline Rational rational_arg(const std::string& text, const std::string& path) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "missing required value", path);
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.message(), path);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + path, "--in");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what(), path);
  }
}

inline DomainSpec load_domain(const RunConfig& cfg) {
  if (!cfg.domain.empty()) return parse_domain(parse_json_text(cfg.domain, "--domain"));
  if (!cfg.in_file.empty()) return parse_domain(parse_json_text(read_file(cfg.in_file), "--in"));
  throw Error(ErrorKind::InvalidArgument, "a domain is required (--domain JSON or --in FILE)", "--domain");
}

inline std::string pretty_orbits(const std::vector<ReebOrbit>& orbits) {
  std::ostringstream os;
  if (orbits.empty()) os << "(no orbits below the cap)\n";
  for (const auto& o : orbits) {
    os << family_name(o.family) << ' ' << o.label() << "  N=" << o.N << "  " << (o.is_bound ? "T>=" : "T=") << o.period.str() << " ("
       << o.period.decimal(6) << ")  cz=" << (o.cz ? std::to_string(*o.cz) : std::string("unknown")) << '\n';
  }
  return os.str();
}

inline std::string pretty_barcode(const CertifiedBarcode& bc) {
  std::ostringstream os;
  os << "degree " << bc.degree << ", window_end " << bc.window_end.str() << '\n';
  for (const auto& b : bc.bars) os << "  [" << b.birth.str() << ", " << b.cert_end.str() << ")\n";
  if (bc.bars.empty()) os << "  (no bars)\n";
  return os.str();
}

inline std::string pretty_certificate(const BoundCertificate& c) {
  std::ostringstream os;
  os << quantity_name(c.quantity) << '(' << c.from << ", " << c.to << ") " << (c.direction == Direction::upper ? "<= " : ">= ") << c.value.str() << " ("
     << c.value.decimal(6) << ")" << (c.attained ? "" : ", not attained") << "  [" << c.provenance.rule << ' ' << c.provenance.digest << "]\n";
  return os.str();
}

inline std::string dump(const Json& j, const std::string& format) { return format == "pretty" ? j.dump(2) + "\n" : j.dump() + "\n"; }

inline std::vector<BoundCertificate> certificates_in(const Json& j) {
  std::vector<BoundCertificate> out;
  if (j.is_array()) {
    for (const auto& x : j) {
      auto more = certificates_in(x);
      out.insert(out.end(), more.begin(), more.end());
    }
  } else if (j.is_object()) {
    if (j.contains("quantity") && j.contains("direction")) {
      out.push_back(certificate_from_json(j));
    } else {
      for (const auto& [key, value] : j.items()) {
        if (key == "provenance") continue;
        auto more = certificates_in(value);
        out.insert(out.end(), more.begin(), more.end());
      }
    }
  }
  return out;
}

}  // namespace detail

// --- subcommands ----------------------------------------------------------------

inline std::string cmd_spectrum(const RunConfig& cfg) {
  const DomainSpec d = detail::load_domain(cfg);
  const Rational cap = detail::rational_arg(cfg.cap, "--cap");
  std::vector<ReebOrbit> orbits = std::visit(
      [&](const auto& s) -> std::vector<ReebOrbit> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EllipsoidSpec>) return ellipsoid_spectrum(s, cap);
        else if constexpr (std::is_same_v<T, TruncatedEllipsoidSpec>) return trunc_orbits(s, cap, cfg.ncap);
        else if constexpr (std::is_same_v<T, SinkholeSpec>) return sinkhole_spectrum(s, cap);
        else return tube_orbits(s, cap, cfg.ncap);
      },
      d);
  if (cfg.format == "csv") return orbits_csv(orbits);
  if (cfg.format == "pretty") return detail::pretty_orbits(orbits);
  return detail::dump(to_json(orbits), cfg.format);
}

inline std::string cmd_barcode(const RunConfig& cfg) {
  const DomainSpec d = detail::load_domain(cfg);
  const CertifiedBarcode bc = std::visit(
      [&](const auto& s) -> CertifiedBarcode {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EllipsoidSpec>) {
          return ellipsoid_barcode(s.size(), cfg.degree);
        } else if constexpr (std::is_same_v<T, SinkholeSpec>) {
          CertifiedBarcode bc = sinkhole_barcode(s);
          if (bc.degree != cfg.degree) throw Error(ErrorKind::InvalidArgument, "sinkhole barcodes are certified in degree " + std::to_string(bc.degree), "--degree");
          return bc;
        } else if constexpr (std::is_same_v<T, TruncatedEllipsoidSpec>) {
          Rational cap = min(trunc_nontrivial_period_infimum(s).value, s.lower_base().min_capacity());
          if (!cfg.window.empty()) cap = min(cap, detail::rational_arg(cfg.window, "--window"));
          const auto orbits = tube_orbits(s.lower_base(), trunc_profile(s), cap, 0, {});
          return barcode_from_orbits(orbits, cfg.degree, certified_window(orbits, cfg.degree, Extended(cap)));
        } else {
          const Rational cap = detail::rational_arg(cfg.window, "--window");
          const auto orbits = tube_orbits(s, cap, 0);
          for (const auto& o : tube_orbits(s, cap, cfg.ncap))
            if (o.is_bound && o.period < cap) throw Error(ErrorKind::HypothesisViolated, "corner family bound " + o.period.str() + " inside the window");
          return barcode_from_orbits(orbits, cfg.degree, certified_window(orbits, cfg.degree, Extended(cap)));
        }
      },
      d);
  if (cfg.format == "pretty") return detail::pretty_barcode(bc);
  return detail::dump(to_json(bc), cfg.format);
}

inline std::string cmd_beta_search(const RunConfig& cfg) {
  const EllipsoidSpec base{detail::rational_list(cfg.a, "--a")};
  validate(base, "--a");
  const DirichletWitness w = dirichlet_tuple(base, BigInt(cfg.min_pn), cfg.max_pn);
  Json j = to_json(w);
  if (!cfg.beta.empty()) {
    const BetaCertificate c = certify_beta(base, detail::rational_arg(cfg.beta, "--beta"), w);
    j["certified"] = {{"beta", c.beta.str()}, {"margins", orbitgauge::detail::rationals_json(c.margins)}};
  }
  if (cfg.format == "pretty") {
    std::ostringstream os;
    os << "p = (";
    for (std::size_t i = 0; i < w.p.size(); ++i) os << (i ? ", " : "") << w.p[i].get_str();
    os << ")\nwindow (" << w.lo.str() << ", " << w.hi.str() << ")  ~ (" << w.lo.decimal(8) << ", " << w.hi.decimal(8) << ")\nquality " << w.quality.str() << '\n';
    return os.str();
  }
  return detail::dump(j, cfg.format);
}

inline DirichletWitness witness_for(const RunConfig& cfg, const TruncatedEllipsoidSpec& spec) {
  if (!cfg.witness.empty()) return witness_from_json(detail::parse_json_text(cfg.witness, "--witness"));
  // windows sit just below p_n a_n / a_{n+1}
  BigInt start = ceil(spec.beta * spec.a_top() / spec.base.a[spec.base.size() - 2]);
  if (cfg.min_pn > 1) start = cfg.min_pn;
  if (start < 1) start = 1;
  return dirichlet_tuple(spec.base, start, cfg.max_pn);
}

inline std::string cmd_bound(const RunConfig& cfg) {
  BoundCertificate c;
  if (cfg.rule == "coarsecvg") {
    if (!cfg.domain.empty() || !cfg.in_file.empty()) {
      const DomainSpec d = detail::load_domain(cfg);
      const auto* t = std::get_if<TruncatedEllipsoidSpec>(&d);
      if (!t) throw Error(ErrorKind::InvalidArgument, "coarsecvg needs a truncated ellipsoid", "--domain");
      c = upper_trunc_vs_ellipsoid(*t);
    } else {
      c = upper_trunc_vs_ellipsoid(detail::rational_arg(cfg.beta, "--beta"));
    }
  } else if (cfg.rule == "dellu") {
    const DomainSpec d = detail::load_domain(cfg);
    const auto* t = std::get_if<TruncatedEllipsoidSpec>(&d);
    if (!t) throw Error(ErrorKind::InvalidArgument, "dellu needs a truncated ellipsoid", "--domain");
    c = lower_trunc_vs_all_ellipsoids(*t, witness_for(cfg, *t)).certificate;
  } else if (cfg.rule == "uppersink") {
    c = upper_sinkhole_pair(detail::rational_list(cfg.eps, "--eps"), detail::rational_list(cfg.zeta, "--zeta"), cfg.n);
  } else if (cfg.rule == "quasicor") {
    c = lower_sinkhole_pair(detail::rational_list(cfg.eps, "--eps"), detail::rational_list(cfg.zeta, "--zeta"), cfg.n).certificate;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown rule '" + cfg.rule + "' (coarsecvg, dellu, uppersink, quasicor)", "--rule");
  }
  if (cfg.format == "pretty") return detail::pretty_certificate(c);
  return detail::dump(to_json(c), cfg.format);
}

inline std::string cmd_v34(const RunConfig& cfg) {
  const V34Report r = v34_report(cfg.n, detail::rational_arg(cfg.eps, "--eps"));
  if (cfg.format == "csv") return "quantity,order,bound,value\ndelta_f,V3:V4,lower," + r.lower.str() + "\ndelta_f,V4:V3,lower," + r.lower.str() + "\nd_c,V3:V4,upper," + r.upper_dc.value.str() + "\n";
  if (cfg.format == "pretty") {
    std::ostringstream os;
    os << "delta_f(V3,V4) >= " << r.lower.str() << "  (engine " << r.engine_v3_v4.str() << ")\n"
       << "delta_f(V4,V3) >= " << r.lower.str() << "  (engine " << r.engine_v4_v3.str() << ")\n"
       << "d_c(V3,V4)     <= " << r.upper_dc.value.str() << "\nstrict: " << (r.strict ? "true" : "false") << '\n';
    return os.str();
  }
  return detail::dump(to_json(r), cfg.format);
}

inline std::string cmd_elldist(const RunConfig& cfg) {
  const EllipsoidSpec base{detail::rational_list(cfg.a.empty() ? "1,1" : cfg.a, "--a")};
  validate(base, "--a");
  std::vector<BigInt> rs;
  for (const auto& s : cfg.r_list.empty() ? std::vector<std::string>{"3", "30", "300"} : cfg.r_list) {
    const Rational v = detail::rational_arg(s, "--r");
    if (!v.is_integer() || v.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "window indices must be positive integers", "--r");
    rs.push_back(v.numerator());
  }
  const auto rows = parallel_map(rs, [&](const BigInt& r) { return elldist_row(base, r); }, cfg.jobs);
  bool increasing = true, decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    increasing = increasing && rows[i - 1].lower.certificate.value < rows[i].lower.certificate.value;
    decreasing = decreasing && rows[i].upper.value < rows[i - 1].upper.value;
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "r,beta,eps,lower,upper\n";
    for (const auto& row : rows)
      os << row.r.get_str() << ',' << row.beta.str() << ',' << row.eps.str() << ',' << row.lower.certificate.value.str() << ',' << row.upper.value.str() << '\n';
    return os.str();
  }
  if (cfg.format == "pretty") {
    std::ostringstream os;
    for (const auto& row : rows)
      os << "r=" << row.r.get_str() << "  beta~" << row.beta.decimal(6) << "  lower " << row.lower.certificate.value.decimal(3) << "  upper "
         << row.upper.value.decimal(6) << '\n';
    os << "lower increasing: " << (increasing ? "true" : "false") << ", upper decreasing: " << (decreasing ? "true" : "false") << '\n';
    return os.str();
  }
  Json arr = Json::array();
  for (const auto& row : rows) arr.push_back(to_json(row));
  return detail::dump(Json{{"rows", arr}, {"lower_increasing", increasing}, {"upper_decreasing", decreasing}}, cfg.format);
}

inline std::string cmd_quasiembed(const RunConfig& cfg) {
  const SurrogateTable table =
      cfg.surrogate_file.empty() ? SurrogateTable::standard() : SurrogateTable::from_json(detail::parse_json_text(detail::read_file(cfg.surrogate_file), "--surrogate"));
  const auto x = detail::rational_list(cfg.x, "--x");
  if (cfg.y.empty()) throw Error(ErrorKind::InvalidArgument, "at least one --y point is required", "--y");
  std::vector<std::vector<Rational>> ys;
  for (const auto& y : cfg.y) ys.push_back(detail::rational_list(y, "--y"));
  const auto reports = parallel_map(ys, [&](const std::vector<Rational>& y) { return quasiembed_verify(x, y, table, cfg.n); }, cfg.jobs);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "y,distance,lower,upper,sandwich\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      os << '"' << cfg.y[i] << "\"," << r.distance.str() << ',' << r.lower.str() << ',' << r.upper.str() << ','
         << (r.lower_le_upper && r.lower_sandwich && r.upper_sandwich ? "true" : "false") << '\n';
    }
    return os.str();
  }
  Json arr = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    arr.push_back({{"y", orbitgauge::detail::rationals_json(ys[i])},
                   {"eps_x", orbitgauge::detail::rationals_json(r.eps_x)},
                   {"eps_y", orbitgauge::detail::rationals_json(r.eps_y)},
                   {"distance", r.distance.str()},
                   {"slack", r.slack.str()},
                   {"lower", r.lower.str()},
                   {"upper", r.upper.str()},
                   {"lower_le_upper", r.lower_le_upper},
                   {"lower_sandwich", r.lower_sandwich},
                   {"upper_sandwich", r.upper_sandwich},
                   {"certificates", certs}});
  }
  return detail::dump(Json{{"x", orbitgauge::detail::rationals_json(x)}, {"points", arr}}, cfg.format);
}

/// Returns the output text and whether any violation was found.
inline std::pair<std::string, bool> cmd_check(const RunConfig& cfg) {
  if (cfg.in_file.empty()) throw Error(ErrorKind::InvalidArgument, "check needs --in FILE", "--in");
  const auto certs = detail::certificates_in(detail::parse_json_text(detail::read_file(cfg.in_file), "--in"));
  Json digests = Json::array();
  bool bad = false;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& c = certs[i];
    const bool digest_ok = input_digest(c.provenance.rule, c.provenance.inputs) == c.provenance.digest;
    Json entry{{"index", i}, {"digest_ok", digest_ok}};
    if (cfg.replay && digest_ok) {
      const bool same = replay_matches(c);
      entry["replay_ok"] = same;
      bad = bad || !same;
    }
    bad = bad || !digest_ok;
    digests.push_back(entry);
  }
  const auto verdicts = consistency_check(certs);
  for (const auto& v : verdicts) bad = bad || v.kind != "strict";
  if (cfg.format == "pretty") {
    std::ostringstream os;
    os << certs.size() << " certificates\n";
    for (const auto& v : verdicts) os << v.kind << ": " << v.detail << '\n';
    os << (bad ? "FAILED" : "ok") << '\n';
    return {os.str(), bad};
  }
  return {detail::dump(Json{{"certificates", certs.size()}, {"checks", digests}, {"verdicts", to_json(verdicts)}, {"ok", !bad}}, cfg.format), bad};
}

// --- entry point -----------------------------------------------------------------

inline void error_json(std::ostream& err, ErrorKind kind, const std::string& message, const std::string& path) {
  Json j{{"error", std::string(kind_name(kind))}, {"message", message}};
  if (!path.empty()) j["path"] = path;
  err << j.dump() << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Certified Reeb orbit, barcode and distance-bound computations", "orbitgauge"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool with_domain) {
    if (with_domain) {
      sub->add_option("--domain", cfg.domain, "domain descriptor as inline JSON");
      sub->add_option("--in", cfg.in_file, "read the input from a file");
    }
    sub->add_option("--format", cfg.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--jobs", cfg.jobs, "parallel width (default ORBITGAUGE_JOBS or 1)");
    sub->add_option("--out", cfg.out_file, "write output to a file");
  };

  auto* spectrum = app.add_subcommand("spectrum", "list closed Reeb orbits up to a period cap");
  common(spectrum, true);
  spectrum->add_option("--cap", cfg.cap, "period cap (threshold b for sinkholes)")->required();
  spectrum->add_option("--ncap", cfg.ncap, "largest multiplicity for corner families")->check(CLI::PositiveNumber);

  auto* barcode = app.add_subcommand("barcode", "certified barcode in one degree");
  common(barcode, true);
  barcode->add_option("--degree", cfg.degree, "grading")->required();
  barcode->add_option("--window,--cap", cfg.window, "window end (required for radial tubes)");
  barcode->add_option("--ncap", cfg.ncap, "multiplicity cap for corner-family checks")->check(CLI::PositiveNumber);

  auto* beta = app.add_subcommand("beta-search", "find a Dirichlet window");
  common(beta, false);
  beta->add_option("--a", cfg.a, "capacities a_1,...,a_{n+1}")->required();
  beta->add_option("--min-pn", cfg.min_pn, "smallest p_n (or multiple r when n = 1)")->check(CLI::PositiveNumber);
  beta->add_option("--max-pn", cfg.max_pn, "search ceiling")->check(CLI::PositiveNumber);
  beta->add_option("--beta", cfg.beta, "also certify this beta against the window");

  auto* bound = app.add_subcommand("bound", "emit one bound certificate");
  common(bound, true);
  bound->add_option("--rule", cfg.rule, "coarsecvg, dellu, uppersink or quasicor")->required();
  bound->add_option("--beta", cfg.beta, "beta for coarsecvg without a domain");
  bound->add_option("--eps", cfg.eps, "sinkhole depths, comma separated");
  bound->add_option("--zeta", cfg.zeta, "second depth vector");
  bound->add_option("--n", cfg.n, "sinkhole ball dimension n")->check(CLI::PositiveNumber);
  bound->add_option("--witness", cfg.witness, "Dirichlet witness JSON for dellu");
  bound->add_option("--min-pn", cfg.min_pn, "start of the witness search for dellu")->check(CLI::PositiveNumber);
  bound->add_option("--max-pn", cfg.max_pn, "witness search ceiling")->check(CLI::PositiveNumber);

  auto* v34 = app.add_subcommand("v34", "hemidistances between the beta = 3 and beta = 4 truncations");
  common(v34, false);
  v34->add_option("--n", cfg.n, "n (domains live in C^{n+1})")->check(CLI::PositiveNumber);
  v34->add_option("--eps", cfg.eps, "eps")->required();

  auto* elldist = app.add_subcommand("elldist", "lower and upper bounds along Dirichlet windows");
  common(elldist, false);
  elldist->add_option("--a", cfg.a, "capacities (default 1,1)");
  elldist->add_option("--r", cfg.r_list, "window indices (default 3 30 300)")->delimiter(',');

  auto* quasi = app.add_subcommand("quasiembed", "check the quasi-isometry sandwich for sinkhole points");
  common(quasi, false);
  quasi->add_option("--x", cfg.x, "descending nonnegative point")->required();
  quasi->add_option("--y", cfg.y, "comparison point(s)")->required();
  quasi->add_option("--n", cfg.n, "ball dimension n")->check(CLI::PositiveNumber);
  quasi->add_option("--surrogate", cfg.surrogate_file, "JSON table of {x, value, log_error} for exp(-x)");

  auto* check = app.add_subcommand("check", "cross-check a file of certificates");
  common(check, false);
  check->add_option("--in", cfg.in_file, "certificate or report JSON")->required();
  check->add_flag("--replay", cfg.replay, "recompute every certificate from its provenance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return 0;
    }
    error_json(err, ErrorKind::InvalidArgument, e.what(), "");
    return 2;
  }
  if (cfg.jobs == 0) cfg.jobs = default_jobs();

  try {
    std::string text;
    int status = 0;
    if (spectrum->parsed()) text = cmd_spectrum(cfg);
    else if (barcode->parsed()) text = cmd_barcode(cfg);
    else if (beta->parsed()) text = cmd_beta_search(cfg);
    else if (bound->parsed()) text = cmd_bound(cfg);
    else if (v34->parsed()) text = cmd_v34(cfg);
    else if (elldist->parsed()) text = cmd_elldist(cfg);
    else if (quasi->parsed()) text = cmd_quasiembed(cfg);
    else {
      auto [t, bad] = cmd_check(cfg);
      text = std::move(t);
      status = bad ? 1 : 0;
    }
    if (cfg.out_file.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out_file);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + cfg.out_file, "--out");
      f << text;
    }
    return status;
  } catch (const Error& e) {
    error_json(err, e.kind(), e.message(), e.path());
    return is_hypothesis_failure(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    error_json(err, ErrorKind::InvalidArgument, e.what(), "");
    return 2;
  }
}

}  // namespace orbitgauge::cli
