#include "tmon/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tmon::io {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw InputError("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw InputError("malformed rational: " + s);
  }
}

}  // namespace

json load_json(const std::string& path) {
  std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": " + e.what());
  }
}

StateDoc parse_state(const json& j) {
  if (!j.contains("probs") || !j["probs"].is_array())
    throw InputError("state document needs a \"probs\" array");
  const json& probs = j["probs"];
  if (probs.empty()) throw InputError("empty probability vector");
  bool exact = true;
  for (const json& v : probs)
    if (!(v.is_string() || v.is_number_integer())) exact = false;
  ProbDist p = [&]() {
    try {
      if (exact) {
        std::vector<Rational> w;
        for (const json& v : probs)
          w.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                    : Rational(v.get<long long>()));
        return ProbDist(std::move(w));
      }
      std::vector<double> w;
      for (const json& v : probs) {
        if (v.is_string())
          throw InputError("probs cannot mix floats and rational strings");
        w.push_back(v.get<double>());
      }
      return ProbDist(std::move(w));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("invalid state: ") + e.what());
    }
  }();
  std::optional<Hamiltonian> h;
  if (j.contains("energies")) {
    std::vector<double> e = j["energies"].get<std::vector<double>>();
    if (static_cast<int>(e.size()) != p.dim())
      throw InputError("energies length does not match probs");
    h = Hamiltonian(std::move(e));
  }
  return {std::move(p), std::move(h)};
}

StateDoc load_state(const std::string& path) { return parse_state(load_json(path)); }

json state_to_json(const ProbDist& p, const Hamiltonian* h) {
  json j;
  if (p.exact()) {
    json probs = json::array();
    for (const Rational& r : p.exact_weights()) {
      std::ostringstream ss;
      ss << numerator(r) << "/" << denominator(r);
      probs.push_back(ss.str());
    }
    j["probs"] = std::move(probs);
  } else {
    json probs = json::array();
    for (double x : p.weights()) probs.push_back(sig12(x));
    j["probs"] = std::move(probs);
  }
  if (h) {
    json e = json::array();
    for (double x : h->levels) e.push_back(sig12(x));
    j["energies"] = std::move(e);
  }
  return j;
}

ThermalContext parse_context(const json& j) {
  if (!j.contains("beta")) throw InputError("context document needs \"beta\"");
  double beta = j["beta"].get<double>();
  double k = j.value("k", 1.0);
  try {
    return make_context(beta, k);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid context: ") + e.what());
  }
}

ThermalContext load_context(const std::string& path) {
  return parse_context(load_json(path));
}

DensityMatrix parse_density(const json& j) {
  if (!j.contains("re")) throw InputError("density document needs \"re\"");
  auto re = j["re"].get<std::vector<std::vector<double>>>();
  size_t n = re.size();
  std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
  if (j.contains("im")) im = j["im"].get<std::vector<std::vector<double>>>();
  if (im.size() != n) throw InputError("re/im shape mismatch");
  Eigen::MatrixXcd m(n, n);
  for (size_t r = 0; r < n; ++r) {
    if (re[r].size() != n || im[r].size() != n) throw InputError("density matrix not square");
    for (size_t c = 0; c < n; ++c) m(static_cast<int>(r), static_cast<int>(c)) =
        std::complex<double>(re[r][c], im[r][c]);
  }
  try {
    return DensityMatrix(std::move(m));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid density matrix: ") + e.what());
  }
}

DensityMatrix load_density(const std::string& path) {
  return parse_density(load_json(path));
}

json matrix_to_json(const StochasticMatrix& m) {
  json rows = json::array();
  for (int j = 0; j < m.rows(); ++j) {
    json row = json::array();
    for (int i = 0; i < m.cols(); ++i) row.push_back(sig12(m.at(j, i)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

double sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json number_or_inf(ExtendedReal x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return sig12(x.value());
}

std::string file_digest(const std::string& path) {
  std::string bytes = read_file(path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

json run_manifest(const std::string& command, const std::vector<std::string>& inputs,
                  std::optional<std::uint64_t> seed) {
  json digests = json::object();
  for (const std::string& p : inputs) digests[p] = file_digest(p);
  json m{{"command", command}, {"inputs", std::move(digests)}, {"tool_version", kToolVersion}};
  if (seed)
    m["seed"] = *seed;
  else
    m["seed"] = nullptr;
  return m;
}

}  // namespace tmon::io
