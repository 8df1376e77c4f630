// psusim command-line front end: reproducible link-transition experiments
// over random traffic (table1) and the conv+pool workload (lenet), the
// relative cost model (cost), and a sorting-unit stage trace (sortdemo).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psusim/cost.hpp"
#include "psusim/io.hpp"
#include "psusim/link.hpp"
#include "psusim/workload.hpp"

namespace {

using namespace psusim;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  std::fputs(text.c_str(), stdout);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

std::vector<OrderingStrategy> strategies_for(const std::string& selection,
                                             const BucketSpec& buckets) {
  if (selection == "none") return {OrderingStrategy::non_optimized()};
  if (selection == "colmajor") return {OrderingStrategy::column_major()};
  if (selection == "acc") return {OrderingStrategy::acc()};
  if (selection == "app") return {OrderingStrategy::app(buckets)};
  return {OrderingStrategy::non_optimized(), OrderingStrategy::column_major(),
          OrderingStrategy::acc(), OrderingStrategy::app(buckets)};
}

int cmd_table1(std::uint64_t packets, std::uint64_t seed, int buckets,
               std::uint32_t window_packets, const std::string& traffic,
               const std::string& strategy_sel, const std::string& out_path) {
  LinkExperimentConfig config;
  config.packets = packets;
  config.seed = seed;
  config.window_packets = window_packets;
  config.traffic = traffic == "uniform" ? TrafficModel::Uniform : TrafficModel::PopcountUniform;
  config.buckets = BucketSpec::uniform(buckets);

  const LaneStats baseline = run_strategy_stats(config, OrderingStrategy::non_optimized());
  std::string text = experiment_csv_header() + "\n";
  for (const auto& strategy : strategies_for(strategy_sel, config.buckets)) {
    const LaneStats stats = strategy.kind == OrderingStrategy::Kind::NonOptimized
                                ? baseline
                                : run_strategy_stats(config, strategy);
    text += to_csv(make_row(config, strategy, stats, baseline)) + "\n";
  }
  emit(text, out_path);
  return 0;
}

int cmd_lenet(int kernel, std::uint64_t seed, int buckets, const std::string& image_path,
              const std::string& image_kind, const std::string& strategy_sel,
              const std::string& out_path, const std::string& dump_path) {
  Image image;
  if (!image_path.empty()) {
    image = load_image(image_path);
  } else if (image_kind == "gradient") {
    image = make_gradient_image(32, 32);
  } else if (image_kind == "checkerboard") {
    image = make_checkerboard_image(32, 32);
  } else {
    image = make_random_image(32, 32, seed);
  }

  ConvConfig config;
  config.input_h = image.h;
  config.input_w = image.w;
  config.kernel = kernel;
  config.validate();
  if (config.output_h() % 2 != 0 || config.output_w() % 2 != 0) {
    std::cerr << "lenet: conv output " << config.output_h() << "x" << config.output_w()
              << " is not poolable (needs even dimensions)\n";
    return 1;
  }
  const std::vector<Kernel> kernels = make_random_kernels(config.num_filters, kernel, seed);
  const BucketSpec spec = BucketSpec::uniform(buckets);

  std::string text =
      "strategy,packets,input_bt_avg,weight_bt_avg,overall_avg,reduction_pct,correct,seed\n";
  bool all_correct = true;
  std::map<std::string, double> overall;
  std::optional<WorkloadResult> dump_result;
  double baseline_overall = 0.0;
  {
    const WorkloadResult base =
        run_workload_experiment(image, kernels, config, OrderingStrategy::non_optimized());
    baseline_overall = base.stats.overall_avg();
  }
  for (const auto& strategy : strategies_for(strategy_sel, spec)) {
    const WorkloadResult r = run_workload_experiment(image, kernels, config, strategy);
    all_correct = all_correct && r.correct;
    overall[std::string(strategy.name())] = r.stats.overall_avg();
    const double reduction =
        100.0 * (baseline_overall - r.stats.overall_avg()) / baseline_overall;
    text += std::string(strategy.name()) + "," + std::to_string(r.stats.packets_sent) + "," +
            fmt(r.stats.input_avg()) + "," + fmt(r.stats.weight_avg()) + "," +
            fmt(r.stats.overall_avg()) + "," + fmt(reduction) + "," +
            (r.correct ? "true" : "false") + "," + std::to_string(seed) + "\n";
    if (!dump_result) dump_result = r;  // first strategy's streamed output
  }
  if (overall.count("acc") && overall.count("app")) {
    const double acc_red = baseline_overall - overall["acc"];
    const double app_red = baseline_overall - overall["app"];
    text += "# app_acc_retention," + fmt(acc_red != 0.0 ? app_red / acc_red : 0.0) + "\n";
  }
  emit(text, out_path);
  if (!dump_path.empty() && dump_result) write_layer_csv(dump_path, dump_result->pooled);
  return all_correct ? 0 : 1;
}

int cmd_cost(int kernel, int n_override, int buckets, const std::string& out_path) {
  const int n = n_override > 0 ? n_override : kernel * kernel;
  const CostReport app = estimate_cost(n, buckets);
  const CostReport acc = estimate_cost(n, kWordBits + 1);
  std::string text = "key,value\n";
  text += "n," + std::to_string(n) + "\n";
  text += "bins," + std::to_string(buckets) + "\n";
  text += "word_width,8\n";
  text += "popcount_units," + fmt(app.popcount_units) + "\n";
  text += "sort_units," + fmt(app.sort_units) + "\n";
  text += "total," + fmt(app.total) + "\n";
  text += "acc_popcount_units," + fmt(acc.popcount_units) + "\n";
  text += "acc_sort_units," + fmt(acc.sort_units) + "\n";
  text += "acc_total," + fmt(acc.total) + "\n";
  text += "popcount_reduction_pct," +
          fmt(100.0 * (acc.popcount_units - app.popcount_units) / acc.popcount_units) + "\n";
  text += "sorting_reduction_pct," +
          fmt(100.0 * (acc.sort_units - app.sort_units) / acc.sort_units) + "\n";
  text += "total_reduction_pct," + fmt(100.0 * (acc.total - app.total) / acc.total) + "\n";
  text += "bitonic_proxy," + fmt(bitonic_cost_proxy(n)) + "\n";
  emit(text, out_path);
  return 0;
}

std::string trace_text(const std::string& label, const std::vector<Word>& words,
                       const BucketSpec& spec, SortOrder order) {
  const SortTrace trace = sort_unit(words, spec, order);
  std::string text = "pattern: " + label + "\n";
  auto line = [&](const char* name, auto&& values) {
    text += "  ";
    text += name;
    for (const auto& v : values) text += " " + std::to_string(static_cast<long long>(v));
    text += "\n";
  };
  text += "  word   ";
  for (Word w : words) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), " %02x", w);
    text += buf;
  }
  text += "\n";
  line("count  ", trace.counts);
  line("key    ", trace.keys);
  line("hist   ", trace.histogram);
  line("prefix ", trace.prefix);
  line("output ", trace.output.indices);
  std::vector<int> sorted_counts;
  sorted_counts.reserve(words.size());
  for (std::uint32_t idx : trace.output.indices) sorted_counts.push_back(trace.counts[idx]);
  line("sorted ", sorted_counts);
  return text;
}

int cmd_sortdemo(int buckets, std::uint64_t seed, bool descending, const std::string& out_path) {
  const BucketSpec spec = BucketSpec::uniform(buckets);
  const SortOrder order = descending ? SortOrder::Descending : SortOrder::Ascending;
  const int n = kPairsPerPacket;

  std::vector<Word> all_ones(n, 0xFF);
  std::vector<Word> all_zeros(n, 0x00);
  std::vector<Word> descending_counts(n);
  for (int i = 0; i < n; ++i) {
    const int count = kWordBits - i % (kWordBits + 1);
    descending_counts[i] = static_cast<Word>(count == 0 ? 0 : 0xFF >> (kWordBits - count));
  }
  std::vector<Word> random_words(n);
  SplitMix64 rng(stream_seed(seed, 0x44454D));  // "DEM"
  for (Word& w : random_words) w = random_word(rng, TrafficModel::PopcountUniform);

  std::string text;
  text += trace_text("all-ones", all_ones, spec, order);
  text += trace_text("all-zeros", all_zeros, spec, order);
  text += trace_text("descending-count", descending_counts, spec, order);
  text += trace_text("seeded-random", random_words, spec, order);
  emit(text, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"popcount-sorting unit link-transition simulator"};
  app.require_subcommand(1);

  std::uint64_t packets = 100000;
  std::uint64_t seed = 1;
  int buckets = 4;
  std::uint32_t window = 32;
  int kernel = 5;
  std::string traffic = "random";
  std::string strategy = "all";
  std::string out_path;
  std::string image_path;
  std::string image_kind = "random";
  std::string dump_path;
  int n_override = 0;
  bool descending = false;

  auto* table1 = app.add_subcommand("table1", "bit transitions on seeded random traffic");
  table1->add_option("--packets", packets, "packets to send")->check(CLI::PositiveNumber);
  table1->add_option("--seed", seed, "root RNG seed");
  table1->add_option("--buckets", buckets, "bucket count k for app ordering")
      ->check(CLI::Range(1, 9));
  table1->add_option("--window", window, "sorting window in packets")
      ->check(CLI::PositiveNumber);
  table1->add_option("--traffic", traffic, "traffic model")
      ->check(CLI::IsMember({"random", "uniform"}));
  table1->add_option("--strategy", strategy, "restrict to one strategy")
      ->check(CLI::IsMember({"all", "none", "colmajor", "acc", "app"}));
  table1->add_option("--out", out_path, "also write CSV to this path");

  auto* lenet = app.add_subcommand("lenet", "conv+pool workload experiment");
  lenet->add_option("--kernel", kernel, "conv kernel size")->check(CLI::IsMember({5, 7}));
  lenet->add_option("--seed", seed, "root RNG seed (image + kernels)");
  lenet->add_option("--buckets", buckets, "bucket count k for app ordering")
      ->check(CLI::Range(1, 9));
  lenet->add_option("--image", image_path, "input image (IDX or BLNK)");
  lenet->add_option("--image-kind", image_kind, "generated image when --image absent")
      ->check(CLI::IsMember({"random", "gradient", "checkerboard"}));
  lenet->add_option("--strategy", strategy, "restrict to one strategy")
      ->check(CLI::IsMember({"all", "none", "colmajor", "acc", "app"}));
  lenet->add_option("--out", out_path, "also write CSV to this path");
  lenet->add_option("--dump", dump_path, "dump streamed pooled output as CSV");

  auto* cost = app.add_subcommand("cost", "relative datapath cost report");
  cost->add_option("--kernel", kernel, "conv kernel size (n = kernel^2)")
      ->check(CLI::IsMember({5, 7}));
  cost->add_option("--n", n_override, "element count override")->check(CLI::PositiveNumber);
  cost->add_option("--buckets", buckets, "bucket count k")->check(CLI::Range(1, 9));
  cost->add_option("--out", out_path, "also write CSV to this path");

  auto* sortdemo = app.add_subcommand("sortdemo", "stage trace of representative patterns");
  sortdemo->add_option("--buckets", buckets, "bucket count k")->check(CLI::Range(1, 9));
  sortdemo->add_option("--seed", seed, "seed for the random pattern");
  sortdemo->add_flag("--descending", descending, "sort high counts first");
  sortdemo->add_option("--out", out_path, "also write the trace to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table1->parsed()) {
      return cmd_table1(packets, seed, buckets, window, traffic, strategy, out_path);
    }
    if (lenet->parsed()) {
      return cmd_lenet(kernel, seed, buckets, image_path, image_kind, strategy, out_path,
                       dump_path);
    }
    if (cost->parsed()) return cmd_cost(kernel, n_override, buckets, out_path);
    if (sortdemo->parsed()) return cmd_sortdemo(buckets, seed, descending, out_path);
  } catch (const std::exception& e) {
    std::cerr << "psusim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
