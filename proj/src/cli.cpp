#include "lexorank/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "lexorank/blocks.hpp"
#include "lexorank/error.hpp"
#include "lexorank/measure.hpp"
#include "lexorank/sim.hpp"
#include "lexorank/stats.hpp"

namespace lexorank::cli {

using Json = nlohmann::ordered_json;

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

namespace {

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round12(value);
}

Json numbers(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw Error(ErrorKind::Parse, std::string("invalid ") + what + " '" + token + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) {
    throw Error(ErrorKind::Parse, std::string("missing ") + what);
  }
  return out;
}

/// Writes to the --out file when given, else to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw Error(ErrorKind::InvalidParameter, "cannot open '" + path + "' for writing");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

// ---------------------------------------------------------------------------
// inspect

std::size_t display_width(const std::string& s) {
  // Counts UTF-8 code points; every glyph printed here is single width.
  std::size_t width = 0;
  for (unsigned char c : s) width += (c & 0xC0) != 0x80;
  return width;
}

void inspect_text(const Word& w, std::ostream& out) {
  const auto membership = classify(w);
  out << "word:       " << w.str() << '\n';
  out << "length:     " << w.size() << '\n';
  out << "primitive:  " << (is_primitive(w) ? "yes" : "no") << '\n';
  out << "lyndon:     " << (is_lyndon(w) ? "yes" : "no") << '\n';
  out << "membership: " << describe(membership) << '\n';
  if (membership != Membership::Member) {
    if (is_primitive(w) && w.size() >= 2) out << "phi:        " << phi(w).str() << '\n';
    return;
  }

  const auto d = decompose_ranked(w);
  std::string blocks_line = "blocks:     ";
  std::string ranks_line = "ranks:      ";
  for (std::size_t k = 0; k < d.count(); ++k) {
    if (k > 0) blocks_line += " · ";
    const std::size_t column = display_width(blocks_line);
    while (display_width(ranks_line) < column) ranks_line += ' ';
    blocks_line += to_string(d.block(k));
    ranks_line += std::to_string(d.ranks[k]);
  }
  out << blocks_line << '\n' << ranks_line << '\n';
  out << "N:          " << d.count() << '\n';
  out << "phi:        " << phi(w).str() << '\n';
  out << "orbit size: " << block_orbit(w).size() << '\n';
  if (d.count() <= kDefaultMaxBlocks) {
    out << "class size: " << class_members(w).size() << '\n';
  }
}

Json inspect_json(const Word& w) {
  const auto membership = classify(w);
  Json j;
  j["word"] = w.str();
  j["length"] = w.size();
  j["primitive"] = is_primitive(w);
  j["smallest_period"] = smallest_period(w);
  j["lyndon"] = is_lyndon(w);
  j["in_W"] = membership == Membership::Member;
  j["membership"] = describe(membership);
  if (is_primitive(w) && w.size() >= 2) j["phi"] = phi(w).str();
  if (membership == Membership::Member) {
    const auto d = decompose_ranked(w);
    Json blocks = Json::array();
    for (std::size_t k = 0; k < d.count(); ++k) blocks.push_back(to_string(d.block(k)));
    j["blocks"] = blocks;
    j["ranks"] = d.ranks;
    j["orbit_size"] = d.count();
    if (d.count() <= kDefaultMaxBlocks) j["class_size"] = class_members(w).size();
  }
  return j;
}

// ---------------------------------------------------------------------------
// enumerate

Json distribution_json(const ExactDistribution& law, const char* key) {
  Json out = Json::array();
  for (const auto& [value, mass] : law.atoms()) {
    out.push_back(Json{{key, value}, {"mass", number(mass)}});
  }
  return out;
}

Json enumerate_json(const WeightedAlphabet& alphabet, std::size_t n, bool structure,
                    const EnumerationOptions& options) {
  const auto summary = summarize_measure(alphabet, n, options);
  const double norm_pow = std::pow(alphabet.norm(2.0), static_cast<double>(n));
  Json j;
  j["n"] = n;
  j["alphabet"] = alphabet.to_string();
  j["prob_W"] = number(summary.prob_W);
  j["prob_nonprimitive"] = number(summary.prob_nonprimitive);
  j["gap"] = number(summary.gap_W());
  j["norm2_pow_n"] = number(norm_pow);
  j["gap_ratio"] = number(summary.gap_W() / norm_pow);
  j["dist_N"] = distribution_json(summary.dist_N(), "N");
  j["dist_runs_a1"] = distribution_json(summary.dist_runs_a1(), "runs");
  j["tail"] = Json{{"threshold", number(summary.tail_threshold)}, {"mass", number(summary.tail())}};
  j["uniformity_maxdev"] = number(summary.uniformity_maxdev());
  Json laws = Json::array();
  for (const auto& [i, by_count] : summary.position_law) {
    for (const auto& [count, law] : by_count) {
      Json masses = Json::array();
      const auto normalized = law.normalized();
      for (std::size_t k = 1; k <= count; ++k) {
        masses.push_back(number(normalized.mass(static_cast<std::int64_t>(k))));
      }
      laws.push_back(Json{{"i", i}, {"N", count}, {"position_mass", masses}});
    }
  }
  j["rank_position_law"] = laws;
  if (structure) {
    const auto r = check_structure(alphabet, n, options);
    j["structure"] = Json{{"ok", r.ok()},
                          {"words_in_W", r.words_in_W},
                          {"primitive_words", r.primitive_words},
                          {"classes", r.classes},
                          {"orbits", r.orbits},
                          {"lyndon_words", r.lyndon_words},
                          {"partition_violations", r.partition_violations},
                          {"orbit_violations", r.orbit_violations},
                          {"incidence_violations", r.incidence_violations},
                          {"shift_violations", r.shift_violations},
                          {"phi_violations", r.phi_violations},
                          {"lyndon_violations", r.lyndon_violations},
                          {"disintegration_gap", number(r.disintegration_gap)}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// simulate

const char* sampler_name(SamplerKind kind) {
  return kind == SamplerKind::Rejection ? "rejection" : "phi";
}

Json report_json(const ExperimentConfig& config, const ExperimentReport& report) {
  Json j;
  j["alphabet"] = config.alphabet.to_string();
  j["seed"] = config.seed;
  j["samples_per_n"] = config.samples_per_n;
  j["n_values"] = config.n_values;
  Json selectors = Json::array();
  for (const auto& s : config.rank_indices) selectors.push_back(s.label());
  j["rank_indices"] = selectors;
  j["sampler"] = sampler_name(config.sampler);
  j["grid_convention"] = "right-endpoint";
  j["normalizations"] = Json{{"frac", "position / N"},
                             {"norm_half", "2 position / (p1 (1 - p1) n)"},
                             {"norm_full", "position / (p1 (1 - p1) n)"}};
  Json per_n = Json::array();
  for (const auto& nr : report.per_n) {
    Json jn;
    jn["n"] = nr.n;
    jn["samples"] = nr.samples;
    jn["attempts"] = nr.attempts;
    jn["acceptance_rate"] = number(nr.acceptance_rate);
    jn["mean_N_over_n"] = number(nr.mean_blocks_over_n);
    jn["lemma_threshold"] = number(nr.lemma_threshold);
    jn["lemma_tail_count"] = nr.lemma_tail_count;
    Json ranks = Json::array();
    for (const auto& rr : nr.ranks) {
      Json jr;
      jr["i"] = rr.selector.label();
      jr["count"] = rr.count;
      jr["skipped"] = rr.skipped;
      if (rr.count > 0) {
        jr["frac"] = Json{{"w2", number(rr.frac_w2)},
                          {"ks", number(rr.frac_ks)},
                          {"mean", number(rr.frac_mean)},
                          {"var", number(rr.frac_var)},
                          {"moments", numbers(rr.frac_moments)},
                          {"conditional_max_z", number(rr.conditional_max_z)},
                          {"conditional_cells", rr.conditional_cells}};
        jr["norm_half"] = Json{{"w2", number(rr.norm_half_w2)}, {"mean", number(rr.norm_half_mean)}};
        jr["norm_full"] = Json{{"w2", number(rr.norm_full_w2)}, {"mean", number(rr.norm_full_mean)}};
      }
      ranks.push_back(jr);
    }
    jn["ranks"] = ranks;
    per_n.push_back(jn);
  }
  j["per_n"] = per_n;
  Json slopes = Json::object();
  for (std::size_t s = 0; s < report.frac_w2_slope.size(); ++s) {
    slopes[config.rank_indices[s].label()] = number(report.frac_w2_slope[s]);
  }
  j["frac_w2_slope"] = slopes;
  j["warnings"] = report.warnings;
  return j;
}

void write_records_csv(const ExperimentResult& result, std::ostream& out) {
  out << "n,sample_id,N,i,position,frac,norm_half,norm_full\n";
  for (const auto& rec : result.records) {
    out << rec.n << ',' << rec.sample_id << ',' << rec.blocks << ',' << rec.rank << ',';
    if (rec.skipped) {
      out << ",,,\n";
      continue;
    }
    out << rec.position << ',' << format_number(rec.frac) << ',' << format_number(rec.norm_half)
        << ',' << format_number(rec.norm_full) << '\n';
  }
}

// ---------------------------------------------------------------------------
// w2

std::vector<double> read_sample(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) {
      throw Error(ErrorKind::InvalidParameter, "cannot open sample file '" + path + "'");
    }
    in = &file;
  }
  std::vector<double> values;
  std::string token;
  while (*in >> token) {
    if (token.back() == ',') token.pop_back();
    if (token.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw Error(ErrorKind::Parse, "invalid sample value '" + token + "'");
    }
    values.push_back(v);
  }
  return values;
}

Json w2_json(const EmpiricalSample& sample) {
  Json j;
  j["m"] = sample.size();
  j["w2"] = number(w2_to_uniform(sample));
  j["ks"] = number(ks_to_uniform(sample));
  j["mean"] = number(mean(sample));
  j["var"] = number(variance(sample));
  j["moments"] = numbers(moments(sample, 4));
  j["grid_w2"] = number(w2_grid(sample.size()));
  return j;
}

void write_json(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blocks, ranks and rank-position statistics of random words"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 42;
  app.add_option("--out", out_path, "Write the primary output to this file");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", seed, "Random seed");

  auto* inspect = app.add_subcommand("inspect", "Blocks, ranks and phi of one word");
  std::string word_text;
  inspect->add_option("word", word_text, "Word as letters (acaab) or integers (\"1 3 1\")")
      ->required();

  auto* enumerate = app.add_subcommand("enumerate", "Exact measures on W_n by enumeration");
  std::string alphabet_text = "0.5,0.5";
  std::size_t n = 0;
  bool structure = false;
  bool serial = false;
  enumerate->add_option("--alphabet", alphabet_text, "\"0.5,0.3,0.2\" or \"geom:0.5\"");
  enumerate->add_option("--n", n, "Word length")->required();
  enumerate->add_flag("--structure", structure, "Also run the exhaustive structural checks");
  enumerate->add_flag("--serial", serial, "Use the single-threaded reference enumeration");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rank positions on W_n");
  std::string n_list = "128,512,1024";
  std::size_t samples = 20000;
  std::string csv_path;
  std::string rank_list = "1,2,random";
  int workers = 0;
  std::string sampler = "rejection";
  std::uint64_t max_attempts = 1'000'000;
  simulate->add_option("--alphabet", alphabet_text, "\"0.5,0.3,0.2\" or \"geom:0.5\"");
  simulate->add_option("--n", n_list, "Comma-separated word lengths");
  simulate->add_option("--samples", samples, "Samples per word length");
  simulate->add_option("--csv", csv_path, "Also write per-record CSV here");
  simulate->add_option("--rank-index", rank_list, "Comma-separated rank indices or 'random'");
  simulate->add_option("--workers", workers, "OpenMP threads (0 = runtime default)");
  simulate->add_option("--sampler", sampler, "rejection | phi")
      ->check(CLI::IsMember({"rejection", "phi"}));
  simulate->add_option("--max-attempts", max_attempts, "Rejection attempts per sample");

  auto* w2 = app.add_subcommand("w2", "W_2 and KS of a sample against U[0,1]");
  std::string sample_path;
  w2->add_option("sample-file", sample_path, "Whitespace-separated values; '-' for stdin")
      ->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (inspect->parsed()) {
      const Word w = Word::parse(word_text);
      Sink sink(out_path, out);
      if (format == "json") {
        // json is the global default; inspect prints text unless asked.
        if (app.get_option("--format")->count() > 0) {
          write_json(inspect_json(w), sink.stream());
          return kOk;
        }
      }
      inspect_text(w, sink.stream());
      return kOk;
    }

    if (enumerate->parsed()) {
      const auto alphabet = WeightedAlphabet::parse(alphabet_text);
      auto options = EnumerationOptions::from_env();
      options.parallel = !serial;
      const Json j = enumerate_json(alphabet, n, structure, options);
      Sink sink(out_path, out);
      if (format == "csv") {
        sink.stream() << "N,mass\n";
        for (const auto& row : j["dist_N"]) {
          sink.stream() << row["N"].get<std::int64_t>() << ','
                        << format_number(row["mass"].get<double>()) << '\n';
        }
      } else {
        write_json(j, sink.stream());
      }
      return kOk;
    }

    if (simulate->parsed()) {
      ExperimentConfig config;
      config.alphabet = WeightedAlphabet::parse(alphabet_text);
      config.n_values = parse_sizes(n_list, "word length");
      config.samples_per_n = samples;
      config.rank_indices.clear();
      std::stringstream ranks_stream(rank_list);
      std::string token;
      while (std::getline(ranks_stream, token, ',')) {
        config.rank_indices.push_back(RankSelector::parse(token));
      }
      config.seed = seed;
      config.workers = workers;
      config.sampler = sampler == "phi" ? SamplerKind::Phi : SamplerKind::Rejection;
      config.max_rejection_attempts = max_attempts;
      try {
        config.validate();
      } catch (const Error& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
      }
      const auto result = run_experiment(config);
      const auto report = summarize(result);
      for (const auto& warning : report.warnings) err << "warning: " << warning << '\n';
      Sink sink(out_path, out);
      if (format == "csv") {
        write_records_csv(result, sink.stream());
      } else {
        write_json(report_json(config, report), sink.stream());
      }
      if (!csv_path.empty()) {
        Sink csv(csv_path, out);
        write_records_csv(result, csv.stream());
      }
      return kOk;
    }

    if (w2->parsed()) {
      const EmpiricalSample sample(read_sample(sample_path));
      const Json j = w2_json(sample);
      Sink sink(out_path, out);
      if (format == "csv") {
        sink.stream() << "m,w2,ks,mean,var\n"
                      << sample.size() << ',' << format_number(j["w2"].get<double>()) << ','
                      << format_number(j["ks"].get<double>()) << ','
                      << format_number(j["mean"].get<double>()) << ','
                      << format_number(j["var"].get<double>()) << '\n';
      } else {
        write_json(j, sink.stream());
      }
      return kOk;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) {
      err << "usage error: " << e.what() << '\n';
      return kUsageError;
    }
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace lexorank::cli
