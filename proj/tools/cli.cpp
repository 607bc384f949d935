/*
 * Copyright 2026 The pachner33 Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "pachner33/elliptic.hpp"
#include "pachner33/pachner.hpp"

namespace pachner33::cli {

namespace {

using nlohmann::json;

bool is_elliptic_mode(const std::string& mode) {
  if (mode == "det") return false;
  if (mode == "ell") return true;
  throw ConfigError("unknown mode '" + mode + "' (expected det or ell)");
}

/// Exact field for determinant commands; "" means rational.
Field exact_field(const RunConfig& cfg) {
  const Field f = Field::parse(cfg.field.empty() ? "rational" : cfg.field);
  if (!f.is_exact()) throw ConfigError(cfg.command + " needs an exact field (rational or fp:<p>)");
  return f;
}

void require_complex_field(const RunConfig& cfg) {
  if (!cfg.field.empty() && Field::parse(cfg.field).kind() != FieldKind::Complex) {
    throw ConfigError(cfg.command + " runs over the complex field only");
  }
}

void check_common(const RunConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("--trials must be at least 1");
  if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
    throw ConfigError("--tolerance must be a positive number");
  }
}

json base_config(const RunConfig& cfg, const std::string& field) {
  return {{"field", field}, {"seed", cfg.seed}, {"trials", cfg.trials}};
}

/// Runs body for every trial, turning data errors into failed records.
template <typename Body>
std::vector<TrialRecord> campaign(const RunConfig& cfg, Body body) {
  std::vector<TrialRecord> records(cfg.trials);
  run_trials(
      cfg.trials,
      [&](std::size_t i) {
        Rng rng = trial_rng(cfg.seed, i);
        try {
          records[i] = body(i, rng);
        } catch (const ConfigError&) {
          throw;
        } catch (const Error& e) {
          records[i] = TrialRecord{};
          records[i].error = e.what();
        }
        records[i].index = i;
      },
      cfg.threads);
  return records;
}

EllipticVertexData sample_elliptic(Rng& rng, Complex k) { return sample_generic_elliptic(rng, k); }

Scalar random_h(const Field& field, Rng& rng) {
  const Scalar num = field.random_integer(-9, 9, rng);
  if (field.kind() != FieldKind::Rational) return num;
  return num / field.random_integer(1, 9, rng);
}

json scalars_json(const HTriple& h) {
  json out = json::array();
  for (const Scalar& s : h) out.push_back(s.to_string());
  return out;
}

int expected_rank(bool elliptic, Complex k) {
  // sn degenerates to sin at k = 0 and the forms drop to rank 2.
  if (elliptic && k != Complex(0.0, 0.0)) return 4;
  return 2;
}

std::string rank_human(const Report& report) {
  std::ostringstream out;
  const bool several = report.trials.size() > 1;
  for (const auto& t : report.trials) {
    if (several) out << "trial " << t.index << '\n';
    if (!t.error.empty()) {
      out << "error: " << t.error << '\n';
      continue;
    }
    for (const auto& [name, rank] : t.details["ranks"].items()) out << name << ' ' << rank << '\n';
  }
  out << "summary: " << report.passed() << " passed, " << report.failed() << " failed\n";
  return out.str();
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  const auto bad = [&] { return ConfigError("cannot parse complex number '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();

  const auto real_of = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != part.size()) throw bad();
    return v;
  };

  if (s.back() != 'i' && s.back() != 'j') return {real_of(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, real_of(s)};
  return {real_of(s.substr(0, split)), real_of(s.substr(split))};
}

std::string format_complex(Complex z) {
  std::ostringstream out;
  out << std::setprecision(17) << z.real() << (z.imag() < 0 ? '-' : '+') << std::abs(z.imag())
      << 'i';
  return out.str();
}

Report cmd_verify_det33(const RunConfig& cfg) {
  check_common(cfg);
  const Field field = exact_field(cfg);
  const MoveConfig move = MoveConfig::standard();
  Report report;
  report.command = "verify det33";
  report.config = base_config(cfg, field.name());
  report.move = move;
  report.trials = campaign(cfg, [&](std::size_t i, Rng& rng) {
    const VertexData v = sample_generic_vertices(field, rng);
    return make_trial_record(i, verify_33(move, determinant_phi(v), field));
  });
  return report;
}

Report cmd_verify_cocycle(const RunConfig& cfg) {
  check_common(cfg);
  const bool elliptic = is_elliptic_mode(cfg.mode);
  Report report;
  report.command = "verify cocycle";
  const Field field = elliptic ? (require_complex_field(cfg), Field::complex()) : exact_field(cfg);
  report.config = base_config(cfg, field.name());
  report.config["mode"] = cfg.mode;
  if (elliptic) {
    report.config["k"] = format_complex(cfg.k);
    report.config["tolerance"] = cfg.tolerance;
    report.numeric = true;
  }
  const std::vector<Face> tetrahedra = all_faces();
  report.trials = campaign(cfg, [&](std::size_t, Rng& rng) {
    PhiFunction phi;
    if (elliptic) {
      phi = elliptic_phi(sample_elliptic(rng, cfg.k));
    } else {
      phi = determinant_phi(sample_generic_vertices(field, rng));
    }
    TrialRecord r;
    std::size_t nonzero = 0;
    for (const Face& t : tetrahedra) {
      const auto& v = t.verts();
      const Scalar defect = cocycle_defect(v[0], v[1], v[2], v[3], phi);
      if (elliptic) {
        double scale = 0.0;
        for (const auto& [a, b, c] : {std::array{v[1], v[2], v[3]}, std::array{v[0], v[2], v[3]},
                                      std::array{v[0], v[1], v[3]}, std::array{v[0], v[1], v[2]}}) {
          scale = std::max(scale, phi(a, b, c).magnitude());
        }
        const double rel = defect.magnitude() / scale;
        r.max_residual = std::max(r.max_residual, rel);
        if (!(rel <= cfg.tolerance)) ++nonzero;
      } else if (!defect.is_zero()) {
        ++nonzero;
      }
    }
    r.passed = nonzero == 0;
    r.mismatches = nonzero;
    r.details = {{"tetrahedra", tetrahedra.size()}, {"nonzero_defects", nonzero}};
    return r;
  });
  return report;
}

Report cmd_verify_h33(const RunConfig& cfg) {
  check_common(cfg);
  const Field field = exact_field(cfg);
  const MoveConfig move = MoveConfig::standard();
  Report report;
  report.command = "verify h33";
  report.config = base_config(cfg, field.name());
  report.move = move;
  report.trials = campaign(cfg, [&](std::size_t i, Rng& rng) {
    const PhiFunction phi = determinant_phi(sample_generic_vertices(field, rng));
    const HTriple h{random_h(field, rng), random_h(field, rng), random_h(field, rng)};
    VerifyOptions options;
    options.h_lhs = h;
    TrialRecord r = make_trial_record(i, verify_33(move, phi, field, options));
    const HTriple ones{field.one(), field.one(), field.one()};
    const bool fixed_point = h_transform(ones, phi) == ones;
    r.passed = r.passed && fixed_point;
    r.details = {{"h_lhs", scalars_json(h)},
                 {"h_rhs", scalars_json(h_transform(h, phi))},
                 {"ones_fixed", fixed_point}};
    return r;
  });
  return report;
}

Report cmd_verify_ell33(const RunConfig& cfg) {
  check_common(cfg);
  require_complex_field(cfg);
  Report report;
  report.command = "verify ell33";
  report.config = base_config(cfg, "complex");
  report.config["k"] = format_complex(cfg.k);
  report.config["tolerance"] = cfg.tolerance;
  report.move = MoveConfig::standard();
  report.numeric = true;
  report.trials = campaign(cfg, [&](std::size_t i, Rng& rng) {
    const EllipticVertexData e = sample_elliptic(rng, cfg.k);
    return make_trial_record(i, verify_33_elliptic(e, cfg.tolerance));
  });
  return report;
}

Report cmd_rank(const RunConfig& cfg) {
  check_common(cfg);
  const bool elliptic = is_elliptic_mode(cfg.mode);
  const Field field = elliptic ? (require_complex_field(cfg), Field::complex()) : exact_field(cfg);
  const MoveConfig move = MoveConfig::standard();
  const int expected = expected_rank(elliptic, cfg.k);
  Report report;
  report.command = "rank";
  report.config = base_config(cfg, field.name());
  report.config["mode"] = cfg.mode;
  if (elliptic) report.config["k"] = format_complex(cfg.k);
  report.config["expected_rank"] = expected;
  report.move = move;
  report.trials = campaign(cfg, [&](std::size_t, Rng& rng) {
    PhiFunction phi;
    if (elliptic) {
      phi = elliptic_phi(sample_elliptic(rng, cfg.k));
    } else {
      phi = determinant_phi(sample_generic_vertices(field, rng));
    }
    TrialRecord r;
    r.passed = true;
    json ranks = json::object();
    for (Side side : {Side::Lhs, Side::Rhs}) {
      for (const Simplex4& s : move.simplices(side)) {
        const int rank = rank_of_form(build_phi_form(s, phi, field));
        ranks[s.name()] = rank;
        if (rank != expected) {
          r.passed = false;
          ++r.mismatches;
        }
      }
    }
    r.details = {{"ranks", ranks}};
    return r;
  });
  return report;
}

int execute(RunConfig cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.seed == 0) {
      std::random_device rd;
      while (cfg.seed == 0) cfg.seed = (std::uint64_t{rd()} << 32) | rd();
      err << "seed: " << cfg.seed << '\n';
    }
    Report report;
    if (cfg.command == "verify det33") {
      report = cmd_verify_det33(cfg);
    } else if (cfg.command == "verify cocycle") {
      report = cmd_verify_cocycle(cfg);
    } else if (cfg.command == "verify h33") {
      report = cmd_verify_h33(cfg);
    } else if (cfg.command == "verify ell33") {
      report = cmd_verify_ell33(cfg);
    } else if (cfg.command == "rank") {
      report = cmd_rank(cfg);
    } else {
      throw ConfigError("unknown command '" + cfg.command + "'");
    }
    if (cfg.output == OutputFormat::Json) {
      out << report.to_json().dump(2) << '\n';
    } else if (cfg.command == "rank") {
      out << rank_human(report);
    } else {
      out << report.to_human();
    }
    return report.all_passed() ? kExitOk : kExitVerificationFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numerical checks of the 3-3 Pachner move relation", "pachner33"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string k_text = "0.3";
  std::string output = "human";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "rational, fp:<p> or complex");
    sub->add_option("--seed", cfg.seed, "Campaign seed; 0 draws one and prints it");
    sub->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", cfg.tolerance, "Relative tolerance for complex checks")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output", output, "human or json")
        ->check(CLI::IsMember({"human", "json"}));
  };
  const auto elliptic = [&](CLI::App* sub) {
    sub->add_option("--k", k_text, "Elliptic modulus, e.g. 0.7+0.1i");
  };
  const auto with_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "det or ell")->check(CLI::IsMember({"det", "ell"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "Run a verification campaign");
  verify->require_subcommand(1);
  CLI::App* det33 = verify->add_subcommand("det33", "3-3 relation with determinant phi");
  CLI::App* cocycle = verify->add_subcommand("cocycle", "Cocycle identity on all 15 tetrahedra");
  CLI::App* h33 = verify->add_subcommand("h33", "3-3 relation with the linear h terms");
  CLI::App* ell33 = verify->add_subcommand("ell33", "3-3 relation with elliptic phi");
  CLI::App* rank = app.add_subcommand("rank", "Rank of the six Phi forms");
  for (CLI::App* sub : {det33, cocycle, h33, ell33, rank}) common(sub);
  for (CLI::App* sub : {cocycle, ell33, rank}) elliptic(sub);
  for (CLI::App* sub : {cocycle, rank}) with_mode(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (rank->parsed()) {
    cfg.command = "rank";
  } else {
    for (CLI::App* sub : {det33, cocycle, h33, ell33}) {
      if (sub->parsed()) cfg.command = "verify " + sub->get_name();
    }
  }
  cfg.output = output == "json" ? OutputFormat::Json : OutputFormat::Human;
  try {
    cfg.k = parse_complex(k_text);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return execute(cfg, out, err);
}

}  // namespace pachner33::cli
