// neuroscope: fixture generation, index building and the HTTP service.
#include <httplib.h>

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "neuroscope/activation_index.hpp"
#include "neuroscope/error.hpp"
#include "neuroscope/service.hpp"
#include "neuroscope/synthetic.hpp"

using namespace neuroscope;

namespace {

int run_fixtures(const std::string& out) {
  const auto paths = synthetic::write_fixtures(out);
  std::cout << "model  " << paths.model.string() << "\n"
            << "corpus " << paths.corpus.string() << "\n"
            << "index  " << paths.index.string() << "\n";
  return 0;
}

int run_index_build(const std::string& model_path, const std::string& corpus_dir, const std::string& out,
                    const IndexOptions& options) {
  const Model model = load_weights(model_path);
  const ReferenceCorpus corpus = ReferenceCorpus::load(corpus_dir);
  const ActivationIndex index = build_index(model, corpus, options);
  save_index(index, out);
  std::cout << "indexed " << index.image_count() << " images x " << index.neuron_count() << " neurons (layer "
            << index.table.layer << ", tau " << options.tau << ") -> " << out << "\n";
  return 0;
}

int run_model_info(const std::string& model_path) {
  const Model model = load_weights(model_path);
  for (std::size_t i = 0; i < model.layer_count(); ++i) {
    std::cout << (i == model.dissection_layer() ? "* " : "  ") << i << " " << to_string(model.layer(i)) << "\n";
  }
  const auto native = model.native_input_size();
  std::printf("fingerprint %016llx\ninput %s\ntrunk stride %zu\n",
              static_cast<unsigned long long>(model.fingerprint()),
              native ? std::to_string(*native).c_str() : "unknown", model.trunk_stride());
  return 0;
}

int run_serve(const std::string& model_path, const std::string& index_path, const std::string& corpus_dir,
              const std::string& labels, const std::string& host, int port, const ServiceConfig& config) {
  Model model = load_weights(model_path);
  ActivationIndex index = load_index(index_path, model.fingerprint());
  Service service(std::move(model), std::move(index), ReferenceCorpus::load(corpus_dir), labels, config);
  httplib::Server server;
  service.mount(server);
  std::cout << "serving on http://" << host << ":" << port << " (patch " << service.patch_size() << ")"
            << std::endl;
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neuron dissection and query toolkit"};
  app.require_subcommand(1);

  std::string fixtures_out;
  auto* fixtures = app.add_subcommand("fixtures", "Write the synthetic shape model, corpus and index");
  fixtures->add_option("--out", fixtures_out, "Output directory")->required();

  auto* index_cmd = app.add_subcommand("index", "Activation index operations");
  index_cmd->require_subcommand(1);
  auto* build = index_cmd->add_subcommand("build", "Build an activation index over a corpus");
  std::string model_path, corpus_dir, index_out;
  IndexOptions options;
  std::string source = "pooled";
  build->add_option("--model", model_path, "Weights file")->required()->envname("NEUROSCOPE_MODEL");
  build->add_option("--corpus", corpus_dir, "Corpus directory")->required()->envname("NEUROSCOPE_CORPUS");
  build->add_option("--out", index_out, "Index output path")->required()->envname("NEUROSCOPE_INDEX");
  build->add_option("--tau", options.tau, "Quantile level")->capture_default_str()->envname("NEUROSCOPE_TAU");
  build->add_option("--sample-rate", options.sample_rate, "Fraction of spatial activations sampled")
      ->capture_default_str()
      ->envname("NEUROSCOPE_SAMPLE_RATE");
  build->add_option("--seed", options.seed, "Sampling offset seed")->capture_default_str()->envname("NEUROSCOPE_SEED");
  build->add_option("--quantile-source", source, "pooled | image-max")
      ->check(CLI::IsMember({"pooled", "image-max"}))
      ->capture_default_str()
      ->envname("NEUROSCOPE_QUANTILE_SOURCE");

  auto* model_cmd = app.add_subcommand("model", "Model operations");
  model_cmd->require_subcommand(1);
  auto* info = model_cmd->add_subcommand("info", "Print layers, fingerprint and input size");
  std::string info_model;
  info->add_option("--model", info_model, "Weights file")->required()->envname("NEUROSCOPE_MODEL");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string serve_model, serve_index, serve_corpus, serve_labels, host = "127.0.0.1";
  int port = 8080;
  ServiceConfig config;
  std::size_t patch_size = 0;
  serve->add_option("--model", serve_model, "Weights file")->required()->envname("NEUROSCOPE_MODEL");
  serve->add_option("--index", serve_index, "Index file")->required()->envname("NEUROSCOPE_INDEX");
  serve->add_option("--corpus", serve_corpus, "Corpus directory")->required()->envname("NEUROSCOPE_CORPUS");
  serve->add_option("--labels", serve_labels, "Label log (JSON lines)")->required()->envname("NEUROSCOPE_LABELS");
  serve->add_option("--port", port, "TCP port")->capture_default_str()->envname("NEUROSCOPE_PORT");
  serve->add_option("--host", host, "Bind address")->capture_default_str()->envname("NEUROSCOPE_HOST");
  serve->add_option("--lesion-threshold", config.lesion_threshold, "Positive-class score flagged as lesion")
      ->capture_default_str()
      ->envname("NEUROSCOPE_LESION_THRESHOLD");
  serve->add_option("--cache", config.cache_capacity, "Patch results kept in memory")
      ->capture_default_str()
      ->envname("NEUROSCOPE_CACHE");
  serve->add_option("--top-k", config.top_k, "Top activated images per neuron")
      ->capture_default_str()
      ->envname("NEUROSCOPE_TOP_K");
  serve->add_option("--patch-size", patch_size, "Patch side (default: model input)")->envname("NEUROSCOPE_PATCH_SIZE");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixtures->parsed()) return run_fixtures(fixtures_out);
    if (build->parsed()) {
      options.source = source == "image-max" ? QuantileSource::ImageMaxima : QuantileSource::PooledActivations;
      return run_index_build(model_path, corpus_dir, index_out, options);
    }
    if (info->parsed()) return run_model_info(info_model);
    if (serve->parsed()) {
      if (patch_size > 0) config.patch_size = patch_size;
      return run_serve(serve_model, serve_index, serve_corpus, serve_labels, host, port, config);
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
