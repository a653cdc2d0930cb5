// Copyright 2026 The AIFV Authors
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

// aifv: build, apply and benchmark AIFV codes.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aifv/aifv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitTimeout = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << data;
}

struct FamilyArgs {
  std::string name = "binary";
  int arity = 0;
  int j = 1;

  aifv::Family resolve() const {
    if (name == "binary") return aifv::Family::binary();
    if (name == "ternary") return aifv::Family::ternary();
    if (name == "kary-two-tree") return aifv::Family::kary_two_tree(arity ? arity : 4, j);
    throw UsageError("unknown family '" + name + "' (binary, ternary, kary-two-tree)");
  }
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.name, "binary, ternary or kary-two-tree")->capture_default_str();
  cmd->add_option("--arity", f.arity, "K for kary-two-tree (default 4)");
  cmd->add_option("--j", f.j, "children of incomplete nodes for kary-two-tree")->capture_default_str();
}

double time_limit_from_env() {
  const char* v = std::getenv("AIFV_TIME_LIMIT");
  if (!v || !*v) return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  double s = std::strtod(v, &end);
  if (end == v || *end || s <= 0) throw UsageError("AIFV_TIME_LIMIT must be a positive number of seconds");
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string exact(const aifv::Rational& r) { return aifv::to_string(r) + " (" + fmt(aifv::to_double(r)) + ")"; }

std::string describe_code(const aifv::AifvCode& code) {
  std::ostringstream os;
  for (const auto& tree : code.trees()) {
    os << "T" << tree.tree_index() << ":";
    for (int t = 0; t < tree.alphabet_size(); ++t) {
      const auto& node = tree.node(tree.symbol_node(t));
      std::string w = aifv::to_string(tree.path(tree.symbol_node(t)));
      os << ' ' << code.alphabet()[static_cast<size_t>(t)] << '=' << (w.empty() ? "λ" : w);
      if (node.kind != aifv::NodeKind::kLeaf) os << '*';
    }
    os << '\n';
  }
  return os.str();
}

// Either a distribution file or a built-in family.
struct DistArgs {
  std::string file;
  std::string family_tag;
  size_t n = 0;

  aifv::SourceDistribution resolve() const {
    if (!file.empty()) return aifv::parse_distribution_text(read_file(file));
    if (family_tag.empty()) throw UsageError("give --dist FILE or --source P0|P1|P2 with --n");
    auto fam = aifv::parse_family_tag(family_tag);
    if (!fam) throw UsageError("unknown source family '" + family_tag + "'");
    return aifv::family_distribution(*fam, n);
  }
};

void add_dist_options(CLI::App* cmd, DistArgs& d) {
  cmd->add_option("--dist", d.file, "distribution file: 'label probability' per line");
  cmd->add_option("--source", d.family_tag, "built-in source P0, P1 or P2");
  cmd->add_option("--n", d.n, "alphabet size for --source");
}

std::vector<std::string> split_message(const std::string& text, bool tokens) {
  if (!tokens) return aifv::char_labels(text);
  std::istringstream in(text);
  std::vector<std::string> out{std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
  return out;
}

std::string join_message(const std::vector<std::string>& labels, bool tokens) {
  std::string out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (tokens && i) out += ' ';
    out += labels[i];
  }
  if (tokens && !labels.empty()) out += '\n';
  return out;
}

// build

struct BuildArgs {
  DistArgs dist;
  FamilyArgs family;
  int depth = 0;
  std::string cost;
  bool no_iterate = false;
  bool eof = false;
  bool full_depth = false;
  std::string out;
  std::string trace;
};

int cmd_build(const BuildArgs& a) {
  auto dist = a.dist.resolve();
  auto family = a.family.resolve();
  aifv::OptimizeOptions o;
  if (a.depth) o.depth = a.depth;
  if (!a.cost.empty()) o.initial_cost = aifv::parse_rational(a.cost);
  o.iterate = !a.no_iterate;
  o.allow_full_depth = a.full_depth;
  o.time_limit_s = time_limit_from_env();
  if (a.eof) {
    dist = aifv::with_eof(dist);
    o.leaf_only.insert(static_cast<int>(dist.size() - 1));
  }
  auto r = aifv::optimize(dist, family, o);
  auto bounds = aifv::length_bounds(r.code, dist);
  const auto LH = aifv::huffman_length(dist, family.arity);

  std::ostringstream os;
  os << "family      " << family.name() << "\n"
     << "symbols     " << dist.size() << "\n"
     << "depth       " << r.depth << "\n"
     << "H           " << fmt(bounds.H) << "\n"
     << "L_H         " << exact(LH) << "\n"
     << "L_AIFV      " << exact(r.L) << "\n"
     << "iterations  " << r.trace.size() << " (" << aifv::stop_reason_name(r.stop) << ")\n"
     << "nodes       " << r.nodes << "\n"
     << "seconds     " << fmt(r.seconds) << "\n"
     << describe_code(r.code);
  std::cout << os.str();
  if (!a.out.empty()) write_file(a.out, aifv::serialize_code(r.code, 2) + "\n");
  if (!a.trace.empty()) write_file(a.trace, aifv::trace_csv(r.trace));
  return kExitOk;
}

// encode / decode

struct CodecArgs {
  std::string code;
  std::string in;
  std::string out;
  std::string framing = "length";
  bool tokens = false;
};

int cmd_encode(const CodecArgs& a) {
  auto code = aifv::parse_code(read_file(a.code));
  aifv::Framing framing;
  if (a.framing == "length") {
    framing = aifv::Framing::kLength;
  } else if (a.framing == "eof") {
    framing = aifv::Framing::kEof;
  } else {
    throw UsageError("--framing is length or eof");
  }
  auto msg = split_message(read_file(a.in), a.tokens);
  auto bytes = aifv::write_container(code, msg, framing);
  write_file(a.out, std::string(bytes.begin(), bytes.end()));
  return kExitOk;
}

int cmd_decode(const CodecArgs& a) {
  auto raw = read_file(a.in);
  auto c = aifv::read_container(aifv::Bytes(raw.begin(), raw.end()));
  write_file(a.out, join_message(aifv::labels_of(c.code, c.message), a.tokens));
  return kExitOk;
}

// bench

struct BenchArgs {
  FamilyArgs family;
  std::string source = "P1";
  std::string n_range = "4:10";
  std::string out = "-";
  uint64_t seed = 1;
  uint64_t mc = 0;
  int depth = 0;
};

std::pair<size_t, size_t> parse_range(const std::string& s) {
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      size_t n = std::stoul(s);
      return {n, n};
    }
    return {std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--n-range is N or LO:HI");
  }
}

int cmd_bench(const BenchArgs& a) {
  auto family = a.family.resolve();
  auto tag = aifv::parse_family_tag(a.source);
  if (!tag) throw UsageError("unknown source family '" + a.source + "'");
  auto [lo, hi] = parse_range(a.n_range);
  if (lo < 2 || hi < lo) throw UsageError("--n-range needs 2 <= LO <= HI");
  const double limit = time_limit_from_env();

  std::ostringstream os;
  os << "family,n,dist,H,L_H,L_H_X2,L_AIFV,iterations,nodes,seconds,bound_ok";
  if (a.mc) os << ",L_MC,L_MC_SE";
  os << '\n';
  for (size_t n = lo; n <= hi; ++n) {
    auto dist = aifv::family_distribution(*tag, n);
    aifv::OptimizeOptions o;
    if (a.depth) o.depth = a.depth;
    o.time_limit_s = limit;
    auto r = aifv::optimize(dist, family, o);
    auto bounds = aifv::length_bounds(r.code, dist);
    auto LH = aifv::huffman_length(dist, family.arity);
    std::string LH2 = "";
    if (n * n <= aifv::kDefaultProductCap) LH2 = fmt(aifv::to_double(aifv::huffman_pair_rate(dist, family.arity)));
    os << family.name() << ',' << n << ',' << aifv::family_tag(*tag) << ',' << fmt(bounds.H) << ','
       << fmt(aifv::to_double(LH)) << ',' << LH2 << ',' << fmt(aifv::to_double(r.L)) << ',' << r.trace.size() << ','
       << r.nodes << ',' << fmt(r.seconds) << ',' << (bounds.ok() && r.L <= LH ? 1 : 0);
    if (a.mc) {
      auto e = aifv::empirical_rate(r.code, dist, a.mc, a.seed + n);
      os << ',' << fmt(e.rate) << ',' << fmt(e.std_error);
    }
    os << '\n';
  }
  write_file(a.out, os.str());
  return kExitOk;
}

// oracle

struct OracleArgs {
  DistArgs dist;
  FamilyArgs family;
  int depth = 4;
};

int cmd_oracle(const OracleArgs& a) {
  auto dist = a.dist.resolve();
  auto family = a.family.resolve();
  auto brute = aifv::brute_force_pair(dist, family, a.depth);
  aifv::OptimizeOptions o;
  o.depth = a.depth;
  o.allow_full_depth = true;
  o.time_limit_s = time_limit_from_env();
  auto opt = aifv::optimize(dist, family, o);
  std::cout << "depth       " << a.depth << "\n"
            << "exhaustive  " << exact(brute.L) << "\n"
            << "optimizer   " << exact(opt.L) << "\n";
  if (brute.L != opt.L) {
    std::cout << "DISAGREE\nexhaustive code:\n" << describe_code(brute.code) << "optimizer code:\n"
              << describe_code(opt.code);
    return kExitData;
  }
  std::cout << "agree\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AIFV code construction, coding and benchmarks"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "construct an optimal code for a distribution");
  add_dist_options(b, build.dist);
  add_family_options(b, build.family);
  b->add_option("--depth", build.depth, "maximum tree depth D");
  b->add_option("--cost", build.cost, "initial cost, as a fraction or decimal");
  b->add_flag("--no-iterate", build.no_iterate, "single pass with the initial cost");
  b->add_flag("--eof", build.eof, "add an end marker for EOF framing");
  b->add_flag("--allow-full-depth", build.full_depth, "accept trees that reach depth D");
  b->add_option("-o,--out", build.out, "write the code as JSON");
  b->add_option("--trace", build.trace, "write the cost iterations as CSV");

  CodecArgs enc;
  auto* e = app.add_subcommand("encode", "encode a file into a container");
  e->add_option("--code", enc.code, "code JSON from build")->required();
  e->add_option("-i,--in", enc.in, "input message")->required();
  e->add_option("-o,--out", enc.out, "output container")->required();
  e->add_option("--framing", enc.framing, "length or eof")->capture_default_str();
  e->add_flag("--tokens", enc.tokens, "whitespace-separated symbols instead of characters");

  CodecArgs dec;
  auto* d = app.add_subcommand("decode", "decode a container");
  d->add_option("-i,--in", dec.in, "input container")->required();
  d->add_option("-o,--out", dec.out, "output message")->required();
  d->add_flag("--tokens", dec.tokens, "write symbols separated by spaces");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "compare AIFV and Huffman rates over an alphabet-size sweep");
  add_family_options(be, bench.family);
  be->add_option("--dist", bench.source, "P0, P1 or P2")->capture_default_str();
  be->add_option("--n-range", bench.n_range, "N or LO:HI")->capture_default_str();
  be->add_option("-o,--out", bench.out, "CSV output, - for stdout")->capture_default_str();
  be->add_option("--seed", bench.seed, "seed for --mc")->capture_default_str();
  be->add_option("--mc", bench.mc, "also measure the rate over this many random symbols");
  be->add_option("--depth", bench.depth, "maximum tree depth D");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "check the optimizer against exhaustive search");
  add_dist_options(o, oracle.dist);
  add_family_options(o, oracle.family);
  o->add_option("--depth", oracle.depth, "depth for both searches")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*b) return cmd_build(build);
    if (*e) return cmd_encode(enc);
    if (*d) return cmd_decode(dec);
    if (*be) return cmd_bench(bench);
    if (*o) return cmd_oracle(oracle);
  } catch (const UsageError& err) {
    std::cerr << "aifv: " << err.what() << '\n';
    return kExitUsage;
  } catch (const aifv::Error& err) {
    std::cerr << "aifv: " << err.what() << '\n';
    return err.code() == aifv::ErrorCode::kTimeLimitExceeded ? kExitTimeout : kExitData;
  }
  return kExitUsage;
}
