#include "gnet/serialization.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "gnet/errors.hpp"
#include "gnet/text.hpp"

namespace gnet {
namespace {

using text::format_double;

std::string_view activation_name(Activation a) { return a == Activation::Tanh ? "tanh" : "sigmoid"; }

Activation parse_activation(std::string_view s) {
  if (s == "sigmoid") return Activation::Sigmoid;
  if (s == "tanh") return Activation::Tanh;
  throw ParseError("model file: unknown activation '" + std::string(s) + "'");
}

void write_matrix(std::ostream& out, std::string_view name, const Matrix& M) {
  out << name << ' ' << M.rows() << ' ' << M.cols() << '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(M(i, j));
    }
    out << '\n';
  }
}

void write_common_tail(std::ostream& out, const NormalizationRanges& ranges,
                       const LabelCodec& codec) {
  out << "m " << ranges.size() << '\n';
  for (const auto& r : ranges) out << "range " << format_double(r.min) << ' ' << format_double(r.max) << '\n';
  out << "K " << codec.size() << '\n';
  for (const auto& c : codec.classes()) out << "class " << c << '\n';
}

// Sequential reader over the envelope with line numbers in every error.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Returns the value part of the next line, which must start with `key `.
  std::string expect(std::string_view key) {
    std::string line = next_line();
    const std::string_view view(line);
    if (view.substr(0, key.size()) != key ||
        (view.size() > key.size() && view[key.size()] != ' ')) {
      fail("expected '" + std::string(key) + "'");
    }
    return view.size() > key.size() ? std::string(view.substr(key.size() + 1)) : std::string();
  }

  double number(std::string_view key) {
    const std::string v = expect(key);
    const auto d = text::parse_double(v);
    if (!d) fail("'" + std::string(key) + "' is not a number");
    return *d;
  }

  long long integer(std::string_view key) {
    const double d = number(key);
    if (d != static_cast<double>(static_cast<long long>(d)) || d < 0) {
      fail("'" + std::string(key) + "' is not a non-negative integer");
    }
    return static_cast<long long>(d);
  }

  std::vector<double> numbers(std::string_view key, std::size_t count) {
    return parse_row(expect(key), count);
  }

  Matrix matrix(std::string_view name) {
    const std::vector<double> dims = numbers(name, 2);
    const auto rows = static_cast<Index>(dims[0]);
    const auto cols = static_cast<Index>(dims[1]);
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const std::vector<double> row = parse_row(next_line(), static_cast<std::size_t>(cols));
      for (Index j = 0; j < cols; ++j) M(i, j) = row[static_cast<std::size_t>(j)];
    }
    return M;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("model file line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::string next_line() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      return line;
    }
    ++line_no_;
    fail("unexpected end of file");
  }

  std::vector<double> parse_row(const std::string& line, std::size_t count) {
    std::vector<double> out;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const auto d = text::parse_double(token);
      if (!d) fail("'" + token + "' is not a number");
      out.push_back(*d);
    }
    if (out.size() != count) {
      fail("expected " + std::to_string(count) + " values, found " + std::to_string(out.size()));
    }
    return out;
  }

  std::istream& in_;
  int line_no_ = 0;
};

struct CommonTail {
  NormalizationRanges ranges;
  LabelCodec codec;
};

CommonTail read_common_tail(Reader& r) {
  CommonTail tail;
  const auto m = r.integer("m");
  for (long long t = 0; t < m; ++t) {
    const auto v = r.numbers("range", 2);
    if (v[0] > v[1]) r.fail("range min exceeds max");
    tail.ranges.push_back({v[0], v[1]});
  }
  const auto K = r.integer("K");
  std::vector<std::string> classes;
  for (long long k = 0; k < K; ++k) classes.push_back(r.expect("class"));
  tail.codec = LabelCodec::from_classes(std::move(classes));
  return tail;
}

OutputMode read_mode(Reader& r) {
  const std::string mode = r.expect("mode");
  if (mode == "binary") return OutputMode::Binary;
  if (mode == "multiclass") return OutputMode::Multiclass;
  r.fail("unknown mode '" + mode + "'");
}

void check_outputs(Reader& r, const Matrix& W, OutputMode mode, const LabelCodec& codec) {
  const Index expected = mode == OutputMode::Binary ? 1 : codec.size();
  if (W.cols() != expected) r.fail("weight matrix column count does not match the class count");
}

}  // namespace

void save_model(const AnyModel& any, std::ostream& out) {
  out << "format gnet-model\n";
  out << "version " << kModelFormatVersion << '\n';
  out << "type " << to_string(algorithm_of(any)) << '\n';
  if (const auto* m = std::get_if<TrainedModel>(&any)) {
    out << "mode " << to_string(m->mode) << '\n';
    out << "lambda " << format_double(m->spec.lambda().value()) << '\n';
    out << "gamma " << format_double(m->gamma.value()) << '\n';
    out << "ordering " << kGradedLexTag << '\n';
    out << "L " << m->spec.size() << '\n';
    write_common_tail(out, m->ranges, m->codec);
    write_matrix(out, "weights", m->weights);
  } else if (const auto* rf = std::get_if<RandomFeatureModel>(&any)) {
    out << "mode " << to_string(rf->mode) << '\n';
    out << "activation " << activation_name(rf->spec.activation) << '\n';
    out << "seed " << rf->spec.seed << '\n';
    out << "gamma " << format_double(rf->spec.gamma) << '\n';
    out << "L " << rf->spec.L << '\n';
    write_common_tail(out, rf->ranges, rf->codec);
    write_matrix(out, "input_weights", rf->input_weights);
    write_matrix(out, "biases", rf->biases.transpose());
    write_matrix(out, "weights", rf->weights);
  } else {
    const auto& k = std::get<KernelRidgeModel>(any);
    out << "mode " << to_string(k.mode) << '\n';
    out << "delta " << format_double(k.spec.delta) << '\n';
    out << "C " << format_double(k.spec.C) << '\n';
    write_common_tail(out, k.ranges, k.codec);
    write_matrix(out, "support", k.support);
    write_matrix(out, "alpha", k.alpha);
  }
}

AnyModel load_model(std::istream& in) {
  Reader r(in);
  if (r.expect("format") != "gnet-model") r.fail("not a gnet model file");
  const std::string version = r.expect("version");
  if (version != std::to_string(kModelFormatVersion)) r.fail("unsupported version '" + version + "'");
  const std::string type = r.expect("type");

  if (type == "gnn") {
    const OutputMode mode = read_mode(r);
    const double lambda = r.number("lambda");
    const double gamma = r.number("gamma");
    if (r.expect("ordering") != kGradedLexTag) r.fail("unsupported basis ordering");
    const auto L = r.integer("L");
    CommonTail tail = read_common_tail(r);
    Matrix W = r.matrix("weights");
    if (W.rows() != L) r.fail("weight rows do not match L");
    check_outputs(r, W, mode, tail.codec);
    BasisSpec spec(GegenbauerParam(lambda), static_cast<int>(tail.ranges.size()), static_cast<int>(L));
    return TrainedModel{std::move(spec),  std::move(tail.ranges), std::move(W), std::move(tail.codec),
                        Regularizer(gamma), mode, FitInfo{}};
  }
  if (type == "rf-elm") {
    RandomFeatureSpec spec;
    spec.mode = read_mode(r);
    spec.activation = parse_activation(r.expect("activation"));
    {
      const std::string seed = r.expect("seed");
      const auto [ptr, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), spec.seed);
      if (ec != std::errc() || ptr != seed.data() + seed.size()) r.fail("'seed' is not an unsigned integer");
    }
    spec.gamma = r.number("gamma");
    spec.L = static_cast<int>(r.integer("L"));
    CommonTail tail = read_common_tail(r);
    Matrix W = r.matrix("input_weights");
    Matrix b = r.matrix("biases");
    Matrix out_w = r.matrix("weights");
    const auto m = static_cast<Index>(tail.ranges.size());
    if (W.rows() != m || W.cols() != spec.L || b.rows() != 1 || b.cols() != spec.L ||
        out_w.rows() != spec.L) {
      r.fail("random-feature matrices have inconsistent shapes");
    }
    check_outputs(r, out_w, spec.mode, tail.codec);
    const OutputMode mode = spec.mode;
    return RandomFeatureModel{spec,      std::move(tail.ranges), std::move(W), b.row(0).transpose(),
                              std::move(out_w), std::move(tail.codec), mode, FitInfo{}};
  }
  if (type == "kernel-elm") {
    KernelSpec spec;
    spec.mode = read_mode(r);
    spec.delta = r.number("delta");
    spec.C = r.number("C");
    CommonTail tail = read_common_tail(r);
    Matrix support = r.matrix("support");
    Matrix alpha = r.matrix("alpha");
    if (support.cols() != static_cast<Index>(tail.ranges.size()) || alpha.rows() != support.rows()) {
      r.fail("kernel matrices have inconsistent shapes");
    }
    check_outputs(r, alpha, spec.mode, tail.codec);
    const OutputMode mode = spec.mode;
    return KernelRidgeModel{spec, std::move(tail.ranges), std::move(support), std::move(alpha),
                            std::move(tail.codec), mode, FitInfo{}};
  }
  r.fail("unknown model type '" + type + "'");
}

void save_model_file(const AnyModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  save_model(model, out);
  if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

AnyModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file '" + path.string() + "'");
  return load_model(in);
}

}  // namespace gnet
