// bnsent: Bengali review sentiment pipeline.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bnsent/app.hpp"
#include "bnsent/corpus.hpp"
#include "bnsent/error.hpp"
#include "bnsent/suite.hpp"
#include "bnsent/synthetic.hpp"

namespace {

using bnsent::Error;
using nlohmann::json;
namespace app = bnsent::app;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string features;
  std::string ngram;
  std::string models;
  std::string corpus;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "run configuration (JSON)");
  cmd->add_option("--seed", f.seed, "random seed for split and models (default 123)");
  cmd->add_option("--features", f.features, "count, tfidf-paper, tfidf-log or embedding")
      ->check(CLI::IsMember({"count", "tfidf-paper", "tfidf-log", "embedding"}));
  cmd->add_option("--ngram", f.ngram, "n-gram range LO,HI");
  cmd->add_option("--model", f.models, "model names, comma separated");
  cmd->add_option("--corpus", f.corpus, "corpus CSV, overrides the config");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

app::Overrides overrides_from(const CommonFlags& f) {
  app::Overrides o;
  o.seed = f.seed;
  if (!f.features.empty()) o.features = f.features;
  if (!f.ngram.empty()) {
    const auto parts = split_commas(f.ngram);
    try {
      if (parts.size() != 2) throw std::invalid_argument("count");
      o.ngram = bnsent::features::NgramRange{std::stoi(parts[0]), std::stoi(parts[1])};
    } catch (const std::exception&) {
      throw Error("config.ngram", "--ngram expects LO,HI");
    }
  }
  if (!f.models.empty()) o.models = split_commas(f.models);
  if (!f.corpus.empty()) o.corpus_path = f.corpus;
  return o;
}

app::RunConfig config_from(const CommonFlags& f) {
  const auto o = overrides_from(f);
  if (f.config.empty()) return app::parse_config(json::object(), fs::current_path().string(), o);
  return app::load_config(f.config, o);
}

void require_valid(const app::RunConfig& config) {
  const auto report = app::validate(config);
  for (const auto& w : report.warnings) std::cerr << "[bnsent] warning: " << w << '\n';
  if (!report.valid()) {
    const auto& first = report.issues.front();
    for (std::size_t i = 1; i < report.issues.size(); ++i) {
      std::cerr << "[bnsent] " << report.issues[i].code << ": " << report.issues[i].message << '\n';
    }
    throw Error(first.code, first.message);
  }
}

bool is_validation_code(const std::string& code) {
  for (const char* prefix : {"config.", "corpus.", "split.", "utf8."}) {
    if (code.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Sentiment classification of Bengali food reviews"};
  cli.require_subcommand(1);

  CommonFlags f;

  auto* validate = cli.add_subcommand("validate", "check config, paths and corpus");
  add_common(validate, f);

  auto* preprocess = cli.add_subcommand("preprocess", "write the cleaned corpus");
  add_common(preprocess, f);
  preprocess->add_option("--out", f.out, "output CSV")->required();

  auto* split = cli.add_subcommand("split", "print or write the train/test partition");
  add_common(split, f);
  split->add_option("--out", f.out, "output CSV (default: stdout)");

  auto* train = cli.add_subcommand("train", "train the configured models");
  add_common(train, f);
  train->add_option("--out", f.out, "output directory");

  std::string models_dir;
  auto* evaluate = cli.add_subcommand("evaluate", "score trained models on the test split");
  add_common(evaluate, f);
  evaluate->add_option("--models", models_dir, "directory holding manifest.json (default: output dir)");
  evaluate->add_option("--out", f.out, "report directory (default: <models>/report)");

  std::string model_file;
  std::string input_file;
  std::vector<std::string> texts;
  auto* predict = cli.add_subcommand("predict", "label texts with a trained model");
  predict->add_option("--model-file,-m", model_file, "model JSON file")->required();
  predict->add_option("--input,-i", input_file, "one review per line ('-' for stdin)");
  predict->add_option("text", texts, "review texts");

  bnsent::synthetic::Params gen;
  auto* generate = cli.add_subcommand("generate-synthetic", "write a seeded synthetic corpus");
  generate->add_option("--size", gen.size, "number of reviews")->check(CLI::PositiveNumber);
  generate->add_option("--positive-fraction", gen.positive_fraction, "share of positive reviews")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--noise", gen.noise, "label flip probability")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen.seed, "random seed (default 123)");
  generate->add_option("--out", f.out, "output CSV (default: stdout)");

  std::string report_path;
  auto* report = cli.add_subcommand("report", "render report.json as a Markdown table");
  report->add_option("report", report_path, "report.json or a report directory")->required();

  CLI11_PARSE(cli, argc, argv);

  try {
    if (validate->parsed()) {
      app::ValidationReport r;
      try {
        r = app::validate(config_from(f));
      } catch (const Error& e) {
        r.issues.push_back({e.code(), e.what()});
      }
      std::cout << r.to_json().dump(2) << '\n';
      for (const auto& i : r.issues) std::cerr << "[bnsent] " << i.code << ": " << i.message << '\n';
      return r.valid() ? kOk : kInvalid;
    }
    if (preprocess->parsed()) {
      const auto config = config_from(f);
      require_valid(config);
      const auto result = app::run_preprocess(config, f.out);
      std::cerr << fmt::format("[bnsent] wrote {} rows to {} ({} empty after cleaning)\n",
                               result.rows, f.out, result.empty_rows.size());
      return kOk;
    }
    if (split->parsed()) {
      const auto config = config_from(f);
      require_valid(config);
      const auto csv = app::split_csv(config);
      if (f.out.empty()) std::cout << csv;
      else app::write_file(f.out, csv);
      return kOk;
    }
    if (train->parsed()) {
      auto config = config_from(f);
      if (!f.out.empty()) config.output_dir = f.out;
      require_valid(config);
      const auto result = app::run_train(config);
      std::cerr << fmt::format("[bnsent] {} model(s) trained, {} failed; output in {}\n",
                               result.trained, result.failures.size(), config.output_dir);
      return result.trained > 0 ? kOk : kRuntime;
    }
    if (evaluate->parsed()) {
      const auto config = config_from(f);
      require_valid(config);
      const std::string dir = models_dir.empty() ? config.output_dir : models_dir;
      const std::string out = f.out.empty() ? (fs::path(dir) / "report").string() : f.out;
      const auto doc = app::run_evaluate(config, dir, out);
      std::cout << bnsent::eval::report_markdown(doc);
      return kOk;
    }
    if (predict->parsed()) {
      const auto artifact = app::load_artifact(model_file);
      if (!input_file.empty()) {
        if (input_file == "-") {
          const auto lines = read_lines(std::cin);
          texts.insert(texts.end(), lines.begin(), lines.end());
        } else {
          std::istringstream in(app::read_file(input_file));
          const auto lines = read_lines(in);
          texts.insert(texts.end(), lines.begin(), lines.end());
        }
      }
      const auto predictions = app::predict(artifact, texts);
      for (const auto& p : predictions) {
        json line = {{"label", bnsent::corpus::to_int(p.label)},
                     {"score", p.score},
                     {"tokens", p.tokens},
                     {"degenerate", p.degenerate}};
        std::cout << line.dump() << '\n';
      }
      return kOk;
    }
    if (generate->parsed()) {
      const auto g = bnsent::synthetic::generate(gen);
      const auto csv = bnsent::corpus::to_csv(g.corpus);
      if (f.out.empty()) std::cout << csv;
      else app::write_file(f.out, csv);
      return kOk;
    }
    if (report->parsed()) {
      fs::path p(report_path);
      if (fs::is_directory(p)) p /= "report.json";
      const auto doc = json::parse(app::read_file(p.string()));
      std::cout << bnsent::eval::report_markdown(doc);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "[bnsent] error " << e.code() << ": " << e.what() << '\n';
    return is_validation_code(e.code()) ? kInvalid : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "[bnsent] error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
