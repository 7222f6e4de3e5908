// Copyright 2026 The auctionsep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "auctionsep/ironing.h"
#include "auctionsep/revenue.h"
#include "auctionsep/separation.h"
#include "auctionsep/verify.h"

namespace auctionsep::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20190101;
constexpr const char* kSeedEnv = "AUCTIONSEP_SEED";

std::uint64_t DefaultSeed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(kSeedEnv) + "=" + env +
                                  " is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

Json Manifest(const std::string& subcommand, Json parameters,
              std::optional<std::uint64_t> seed, const std::string& format) {
  Json m;
  m["subcommand"] = subcommand;
  m["parameters"] = std::move(parameters);
  m["seed"] = seed ? Json(*seed) : Json(nullptr);
  m["format"] = format;
  m["timestamp"] = Timestamp();
  return m;
}

std::string ReadTextOrFile(const std::string& text_or_path) {
  std::error_code ec;
  if (!text_or_path.empty() && std::filesystem::is_regular_file(text_or_path, ec)) {
    std::ifstream in(text_or_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return text_or_path;
}

double NumberField(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw std::invalid_argument(std::string("distribution field \"") + key +
                                "\" must be a number");
  }
  return j[key].get<double>();
}

ParsedDistribution FromJson(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("distribution spec must be a JSON object");
  }
  if (j.contains("distribution")) return FromJson(j["distribution"]);
  if (j.contains("family")) {
    if (j["family"] != "example_one") {
      throw std::invalid_argument("unknown distribution family " +
                                  j["family"].dump());
    }
    const double n = NumberField(j, "n");
    if (n != std::floor(n)) {
      throw std::invalid_argument("example_one n must be an integer");
    }
    ExampleOneParams params{NumberField(j, "alpha"), NumberField(j, "beta"),
                            static_cast<int>(n)};
    return {ExampleOne(params), params};
  }
  if (!j.contains("support") || !j.contains("probs")) {
    throw std::invalid_argument(
        "distribution spec needs \"support\" and \"probs\" arrays or a "
        "\"family\"");
  }
  return {MakeDistribution(j["support"].get<std::vector<double>>(),
                           j["probs"].get<std::vector<double>>()),
          std::nullopt};
}

Json DistributionJson(const ParsedDistribution& parsed) {
  Json j;
  j["support"] = std::vector<double>(parsed.dist.support().begin(),
                                     parsed.dist.support().end());
  j["probs"] = std::vector<double>(parsed.dist.probs().begin(),
                                   parsed.dist.probs().end());
  if (parsed.family) {
    j["family"] = "example_one";
    j["alpha"] = parsed.family->alpha;
    j["beta"] = parsed.family->beta;
    j["n"] = parsed.family->n;
  }
  return j;
}

double ParseNumberToken(const std::string& token,
                        const std::optional<ExampleOneParams>& family) {
  if (token == "HIGH" || token == "LOW") {
    if (!family) {
      throw std::invalid_argument(token +
                                  " needs an example_one family distribution");
    }
    return token == "HIGH" ? family->top_value() : family->middle_value();
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw std::invalid_argument("cannot parse number \"" + token + "\"");
  }
  return value;
}

std::vector<std::string> SplitTokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<double> ParseList(const std::string& text,
                              const std::optional<ExampleOneParams>& family) {
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  if (!trimmed.empty() && trimmed.front() == '[') {
    return Json::parse(trimmed).get<std::vector<double>>();
  }
  std::vector<double> out;
  for (const auto& t : SplitTokens(text)) out.push_back(ParseNumberToken(t, family));
  return out;
}

Json OutcomeJson(const Outcome& o) {
  Json j;
  j["winner"] = o.winner ? Json(*o.winner) : Json(nullptr);
  j["payment"] = o.payment;
  j["revenue"] = o.revenue();
  return j;
}

Json EstimateJson(const RevenueEstimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["method"] = EstimateMethodName(e.method);
  return j;
}

Json ReportJson(const SeparationReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["myerev_limit"] = r.myerev_limit;
  j["esp_ub_limit"] = r.esp_ub_limit;
  j["z_star"] = r.z_star;
  j["ratio"] = r.ratio;
  Json trace = Json::array();
  for (const auto& p : r.optimizer_trace) {
    trace.push_back({{"alpha", p.alpha}, {"beta", p.beta}, {"ratio", p.ratio}});
  }
  j["optimizer_trace"] = std::move(trace);
  return j;
}

std::string Csv(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

// Shared by run/eval: builds the mechanism for `buyers` bidders.
Mechanism BuildMechanism(const std::string& name, std::size_t buyers,
                         const std::string& reserves, double reserve,
                         const std::optional<ExampleOneParams>& family) {
  auto need_reserves = [&] {
    if (reserves.empty()) {
      throw std::invalid_argument("--reserves is required for " + name);
    }
    return ParseReserves(reserves, buyers, family);
  };
  if (name == "esp") return EspMechanism{need_reserves()};
  if (name == "lsp") return LspMechanism{need_reserves()};
  if (name == "spm") return SpmMechanism{need_reserves()};
  if (name == "asp") {
    if (!reserves.empty()) {
      const auto profile = ParseReserves(reserves, buyers, family);
      for (double r : profile.reserves()) {
        if (r != profile[0]) {
          throw std::invalid_argument("asp needs one common reserve");
        }
      }
      return AspMechanism{profile[0]};
    }
    return AspMechanism{reserve};
  }
  if (name == "myerson-ex1") {
    if (!family) {
      throw std::invalid_argument(
          "myerson-ex1 needs an example_one family distribution");
    }
    return MyersonExampleOneMechanism{*family};
  }
  throw std::invalid_argument("unknown mechanism " + name);
}

const std::vector<std::string> kMechanisms = {"esp", "lsp", "asp", "spm",
                                              "myerson-ex1"};

}  // namespace

ParsedDistribution ParseDistribution(const std::string& text_or_path) {
  const std::string text = ReadTextOrFile(text_or_path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("distribution is not valid JSON: ") +
                                e.what());
  }
  return FromJson(j);
}

std::vector<double> ParseNumberList(const std::string& text_or_path) {
  return ParseList(ReadTextOrFile(text_or_path), std::nullopt);
}

ReserveProfile ParseReserves(const std::string& spec, std::size_t buyers,
                             const std::optional<ExampleOneParams>& family) {
  const std::string text = ReadTextOrFile(spec);
  if (text.rfind("anonymous:", 0) == 0) {
    return ReserveProfile::Anonymous(buyers,
                                     ParseNumberToken(text.substr(10), family));
  }
  if (text.rfind("two-class:", 0) == 0) {
    const auto tokens = SplitTokens(text.substr(10));
    if (tokens.size() != 3) {
      throw std::invalid_argument(
          "two-class reserves take count_high,r_high,r_low");
    }
    const double count = ParseNumberToken(tokens[0], std::nullopt);
    if (count < 0 || count != std::floor(count)) {
      throw std::invalid_argument("two-class count must be a whole number");
    }
    return ReserveProfile::TwoClass(buyers, static_cast<std::size_t>(count),
                                    ParseNumberToken(tokens[1], family),
                                    ParseNumberToken(tokens[2], family));
  }
  std::vector<double> values = ParseList(text, family);
  if (values.size() != buyers) {
    std::ostringstream msg;
    msg << "got " << values.size() << " reserves for " << buyers << " buyers";
    throw std::invalid_argument(msg.str());
  }
  return ReserveProfile(std::move(values));
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Single-item auction revenue toolkit", "auctionsep"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string dist_spec;
  std::string mechanism;
  std::string reserves;
  std::string bids_spec;
  double reserve = 0.0;
  int n = 0;
  std::optional<std::uint64_t> seed_option;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t cap = 10'000'000;
  bool exact = false, mc = false, naive = false;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_option, "RNG seed (default from " +
                                        std::string(kSeedEnv) + " or " +
                                        std::to_string(kDefaultSeed) + ")");
  };

  auto* iron = app.add_subcommand("iron", "Revenue curve, hull and ironed values");
  iron->add_option("--dist", dist_spec, "Distribution JSON or file")->required();
  iron->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  double alpha = 0.0, beta = 0.0;
  auto* run = app.add_subcommand("run", "Run one auction on a bid profile");
  run->add_option("--mechanism", mechanism)->required()->check(CLI::IsMember(kMechanisms));
  run->add_option("--bids", bids_spec, "Bids inline or file")->required();
  run->add_option("--reserves", reserves, "Reserves or SPM prices");
  run->add_option("--reserve", reserve, "Anonymous reserve for asp");
  run->add_option("--dist", dist_spec, "example_one family (myerson-ex1)");
  run->add_option("--alpha", alpha);
  run->add_option("--beta", beta);
  run->add_option("--n", n, "example_one n (myerson-ex1)");
  add_seed(run);

  auto* eval = app.add_subcommand("eval", "Expected revenue of a mechanism");
  eval->add_option("--mechanism", mechanism)->required()->check(CLI::IsMember(kMechanisms));
  eval->add_option("--dist", dist_spec, "Distribution JSON or file")->required();
  eval->add_option("--n", n, "Buyer count (defaults to the family n)");
  eval->add_option("--reserves", reserves);
  eval->add_option("--reserve", reserve);
  auto* exact_flag = eval->add_flag("--exact", exact, "Exact enumeration");
  eval->add_flag("--mc", mc, "Monte Carlo")->excludes(exact_flag);
  eval->add_flag("--naive", naive, "Brute-force enumeration over support^n");
  eval->add_option("--samples", samples);
  eval->add_option("--cap", cap, "Enumeration cap");
  add_seed(eval);

  bool anonymous = false, mc_fallback = false;
  std::string auction = "esp";
  auto* best = app.add_subcommand("best-reserves", "Search reserves over support values");
  best->add_option("--dist", dist_spec)->required();
  best->add_option("--n", n);
  best->add_flag("--anonymous", anonymous, "Anonymous reserve only");
  best->add_option("--mechanism", auction)->check(CLI::IsMember({"esp", "lsp"}));
  best->add_flag("--mc-fallback", mc_fallback);
  best->add_option("--samples", samples);
  best->add_option("--cap", cap);
  add_seed(best);

  bool optimize = false, corollary = false;
  double grid_step = 0.01;
  std::optional<double> start_alpha, start_beta;
  std::string trace_csv;
  auto* sep = app.add_subcommand("separation", "ESP vs optimal revenue ratio");
  sep->add_option("--alpha", alpha);
  sep->add_option("--beta", beta);
  sep->add_flag("--optimize", optimize);
  sep->add_option("--grid-step", grid_step);
  sep->add_option("--start-alpha", start_alpha);
  sep->add_option("--start-beta", start_beta);
  sep->add_option("--trace-csv", trace_csv, "Write the optimizer trace here");
  sep->add_flag("--asp-corollary", corollary);
  sep->add_option("--n", n);

  bool quick = false;
  double mc_sigma = 3.0;
  auto* verify = app.add_subcommand("verify", "Cross-oracle property suite");
  verify->add_flag("--quick", quick, "Small instances only (n <= 4)");
  verify->add_option("--mc-sigma", mc_sigma, "Monte Carlo tolerance in standard errors");
  verify->add_option("--samples", samples);
  add_seed(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    seed = seed_option ? *seed_option : DefaultSeed();

    if (*iron) {
      const auto parsed = ParseDistribution(dist_spec);
      const auto curve = RevenueCurveOf(parsed.dist);
      const auto ironed = Iron(curve);
      if (format == "csv") {
        out << "section,x,y\n";
        for (const auto& p : curve.breakpoints) {
          out << "breakpoint," << Csv(p.q) << "," << Csv(p.revenue) << "\n";
        }
        for (const auto& p : ironed.hull_points) {
          out << "hull," << Csv(p.q) << "," << Csv(p.revenue) << "\n";
        }
        for (const auto& iv : ironed.ironed_values) {
          out << "ironed," << Csv(iv.value) << "," << Csv(iv.ironed) << "\n";
        }
        return 0;
      }
      Json j;
      j["manifest"] = Manifest("iron", {{"dist", DistributionJson(parsed)}},
                               std::nullopt, format);
      j["distribution"] = DistributionJson(parsed);
      Json points = Json::array(), hull = Json::array(), table = Json::array();
      for (const auto& p : curve.breakpoints) {
        points.push_back({{"q", p.q}, {"revenue", p.revenue}});
      }
      for (const auto& p : ironed.hull_points) {
        hull.push_back({{"q", p.q}, {"revenue", p.revenue}});
      }
      for (const auto& iv : ironed.ironed_values) {
        table.push_back({{"value", iv.value}, {"ironed_virtual_value", iv.ironed}});
      }
      j["breakpoints"] = std::move(points);
      j["hull_points"] = std::move(hull);
      j["ironed_values"] = std::move(table);
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*run) {
      const std::vector<double> bids = ParseNumberList(bids_spec);
      std::optional<ExampleOneParams> family;
      if (!dist_spec.empty()) {
        family = ParseDistribution(dist_spec).family;
      } else if (mechanism == "myerson-ex1") {
        family = ExampleOneParams{alpha, beta, n};
        family->Validate();
      }
      const Mechanism m =
          BuildMechanism(mechanism, bids.size(), reserves, reserve, family);
      Rng rng(seed);
      const Outcome o = Run(m, bids, rng);
      Json params{{"mechanism", mechanism}, {"bids", bids}};
      if (!reserves.empty()) params["reserves"] = reserves;
      if (mechanism == "asp" && reserves.empty()) params["reserve"] = reserve;
      if (family) {
        params["alpha"] = family->alpha;
        params["beta"] = family->beta;
        params["n"] = family->n;
      }
      Json j;
      j["manifest"] = Manifest("run", std::move(params), seed, format);
      j["outcome"] = OutcomeJson(o);
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*eval) {
      const auto parsed = ParseDistribution(dist_spec);
      if (n == 0) {
        if (!parsed.family) {
          throw std::invalid_argument("--n is required for this distribution");
        }
        n = parsed.family->n;
      }
      if (n < 1) throw std::invalid_argument("--n must be at least 1");
      const Mechanism m = BuildMechanism(mechanism, static_cast<std::size_t>(n),
                                         reserves, reserve, parsed.family);
      EvalConfig cfg;
      cfg.enumeration_cap = cap;
      cfg.mc_samples = samples;
      cfg.seed = seed;
      RevenueEstimate estimate;
      std::string method = "exact";
      if (mc) {
        method = "mc";
        estimate = McExpectedRevenue(m, parsed.dist, n, cfg);
      } else if (naive) {
        method = "naive";
        estimate = ExactExpectedRevenueNaive(m, parsed.dist, n, cfg);
      } else {
        estimate = ExactExpectedRevenue(m, parsed.dist, n, cfg);
      }
      Json params{{"mechanism", mechanism},
                  {"dist", DistributionJson(parsed)},
                  {"n", n},
                  {"method", method},
                  {"enumeration_cap", cap}};
      if (!reserves.empty()) params["reserves"] = reserves;
      if (mechanism == "asp" && reserves.empty()) params["reserve"] = reserve;
      if (mc) params["samples"] = samples;
      Json j;
      j["manifest"] = Manifest("eval", std::move(params),
                               mc ? std::optional<std::uint64_t>(seed) : std::nullopt,
                               format);
      j["estimate"] = EstimateJson(estimate);
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*best) {
      const auto parsed = ParseDistribution(dist_spec);
      if (n == 0) {
        if (!parsed.family) {
          throw std::invalid_argument("--n is required for this distribution");
        }
        n = parsed.family->n;
      }
      EvalConfig cfg;
      cfg.enumeration_cap = cap;
      cfg.mc_samples = samples;
      cfg.seed = seed;
      cfg.mc_fallback = mc_fallback;
      Json params{{"dist", DistributionJson(parsed)},
                  {"n", n},
                  {"anonymous", anonymous},
                  {"mechanism", anonymous ? "asp" : auction},
                  {"mc_fallback", mc_fallback},
                  {"enumeration_cap", cap}};
      Json j;
      j["manifest"] = Manifest("best-reserves", std::move(params),
                               mc_fallback ? std::optional<std::uint64_t>(seed)
                                           : std::nullopt,
                               format);
      if (anonymous) {
        const auto result = BestAnonymousReserve(parsed.dist, n, cfg);
        j["reserve"] = result.reserve;
        j["estimate"] = EstimateJson(result.revenue);
      } else {
        const auto result = BestReservesIid(
            auction == "lsp" ? ReserveAuction::kLsp : ReserveAuction::kEsp,
            parsed.dist, n, cfg);
        j["reserves"] = result.reserves;
        j["estimate"] = EstimateJson(result.revenue);
        j["candidates_scored"] = result.candidates_scored;
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*sep) {
      Json j;
      if (corollary) {
        if (n == 0) throw std::invalid_argument("--asp-corollary needs --n");
        const auto r = AspCorollary(n);
        j["manifest"] = Manifest("separation", {{"asp_corollary", true}, {"n", n}},
                                 std::nullopt, format);
        j["asp_corollary"] = {{"n", r.n},
                              {"myerev", r.myerev},
                              {"asp_ub", r.asp_ub},
                              {"ratio", r.ratio}};
      } else if (optimize) {
        MinimizeConfig cfg;
        cfg.grid.step = grid_step;
        Json params{{"optimize", true}, {"grid_step", grid_step}};
        if (start_alpha || start_beta) {
          if (!start_alpha || !start_beta) {
            throw std::invalid_argument(
                "--start-alpha and --start-beta go together");
          }
          cfg.start = TracePoint{*start_alpha, *start_beta, 0.0};
          params["start_alpha"] = *start_alpha;
          params["start_beta"] = *start_beta;
        }
        const auto report = MinimizeRatio(cfg);
        if (!trace_csv.empty()) {
          std::ofstream csv(trace_csv);
          if (!csv) throw std::runtime_error("cannot write " + trace_csv);
          csv << "alpha,beta,ratio\n";
          for (const auto& p : report.optimizer_trace) {
            csv << Csv(p.alpha) << "," << Csv(p.beta) << "," << Csv(p.ratio)
                << "\n";
          }
          params["trace_csv"] = trace_csv;
        }
        j["manifest"] = Manifest("separation", std::move(params), std::nullopt,
                                 format);
        j["report"] = ReportJson(report);
      } else {
        if (sep->count("--alpha") == 0 || sep->count("--beta") == 0) {
          throw std::invalid_argument(
              "separation needs --alpha and --beta, --optimize or "
              "--asp-corollary");
        }
        j["manifest"] = Manifest("separation", {{"alpha", alpha}, {"beta", beta}},
                                 std::nullopt, format);
        j["report"] = ReportJson(EvaluateSeparation(alpha, beta));
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*verify) {
      VerifyConfig cfg;
      cfg.seed = seed;
      cfg.quick = quick;
      cfg.mc_sigma = mc_sigma;
      cfg.mc_samples = samples;
      const auto results = RunVerifySuite(cfg);
      int failures = 0;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name
            << "  measured=" << std::setprecision(6) << r.measured
            << " tolerance=" << r.tolerance;
        if (!r.passed && !r.detail.empty()) out << "  at " << r.detail;
        out << "\n";
        if (!r.passed) {
          ++failures;
          err << "failed property: " << r.name << "\n";
        }
      }
      out << (failures == 0 ? "all " : "") << results.size() - failures << "/"
          << results.size() << " properties passed\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace auctionsep::cli
