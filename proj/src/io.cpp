#include "qv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "qv/states.hpp"

namespace qv::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw SchemaError(where + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<int> dims_field(const json& j, const std::string& where) {
  const json& d = field(j, "dims", where);
  if (!d.is_array() || d.empty()) fail(where, "\"dims\" must be a non-empty array");
  std::vector<int> dims;
  dims.reserve(d.size());
  for (const json& e : d) {
    if (!e.is_number_integer() || e.get<long long>() < 1) {
      fail(where, "\"dims\" entries must be positive integers");
    }
    dims.push_back(e.get<int>());
  }
  return dims;
}

std::vector<double> real_array(const json& j, const char* key, size_t need,
                               const std::string& where) {
  const json& a = field(j, key, where);
  if (!a.is_array() || a.size() != need) {
    fail(where, std::string("\"") + key + "\" must be an array of length " +
                    std::to_string(need));
  }
  std::vector<double> out;
  out.reserve(need);
  for (const json& e : a) {
    if (!e.is_number()) {
      fail(where, std::string("\"") + key + "\" entries must be numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

json complex_pair(const Eigen::Ref<const Matrix>& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

int checked_total_dim(const std::vector<int>& dims, const std::string& where) {
  try {
    return total_dim(dims);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

}  // namespace

json operator_to_json(const Operator& a) {
  json j = complex_pair(a.mat);
  j["dims"] = a.dims;
  return j;
}

json state_to_json(const PureState& s) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    re.push_back(s.amps(i).real());
    im.push_back(s.amps(i).imag());
  }
  return json{{"dims", s.dims}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Operator operator_from_json(const json& j, const std::string& where) {
  std::vector<int> dims = dims_field(j, where);
  int d = checked_total_dim(dims, where);
  size_t need = static_cast<size_t>(d) * static_cast<size_t>(d);
  std::vector<double> re = real_array(j, "re", need, where);
  std::vector<double> im = real_array(j, "im", need, where);
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      size_t k = static_cast<size_t>(r) * d + c;
      m(r, c) = Complex(re[k], im[k]);
    }
  }
  try {
    return Operator(std::move(dims), std::move(m));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

PureState state_from_json(const json& j, const std::string& where) {
  std::vector<int> dims = dims_field(j, where);
  int d = checked_total_dim(dims, where);
  size_t need = static_cast<size_t>(d);
  std::vector<double> re = real_array(j, "re", need, where);
  std::vector<double> im = real_array(j, "im", need, where);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(re[i], im[i]);
  try {
    return PureState(std::move(dims), std::move(v));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

json strategy_to_json(const strategies::Strategy& s) {
  json tests = json::array();
  for (const strategies::Test& t : s.tests) {
    tests.push_back(json{{"p", t.p}, {"effect", operator_to_json(t.effect)}});
  }
  json j{{"label", s.label},
         {"target", state_to_json(s.target)},
         {"tests", std::move(tests)}};
  if (s.predicted_gap) {
    j["predicted_gap"] = *s.predicted_gap;
  } else {
    j["predicted_gap"] = nullptr;
  }
  if (!s.one_way.empty()) {
    json pairs = json::array();
    for (const strategies::OneWayPair& pr : s.one_way) {
      pairs.push_back(json{{"m", operator_to_json(pr.alice)},
                           {"n", operator_to_json(pr.bob)}});
    }
    j["one_way"] = std::move(pairs);
  }
  return j;
}

strategies::Strategy strategy_from_json(const json& j,
                                        const std::string& where) {
  strategies::Strategy s;
  const json& label = field(j, "label", where);
  if (!label.is_string()) fail(where, "\"label\" must be a string");
  s.label = label.get<std::string>();
  s.target = state_from_json(field(j, "target", where), where + " target");

  const json& tests = field(j, "tests", where);
  if (!tests.is_array() || tests.empty()) {
    fail(where, "\"tests\" must be a non-empty array");
  }
  int d = s.target.dim();
  size_t idx = 0;
  for (const json& t : tests) {
    std::string at = where + " tests[" + std::to_string(idx) + "]";
    const json& p = field(t, "p", at);
    if (!p.is_number()) fail(at, "\"p\" must be a number");
    Operator effect = operator_from_json(field(t, "effect", at), at);
    if (effect.dim() != d) fail(at, "effect dimension does not match target");
    s.tests.push_back({p.get<double>(), std::move(effect)});
    ++idx;
  }

  if (auto it = j.find("predicted_gap"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) fail(where, "\"predicted_gap\" must be a number");
    s.predicted_gap = it->get<double>();
  }

  if (auto it = j.find("one_way"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) fail(where, "\"one_way\" must be an array");
    idx = 0;
    for (const json& pr : *it) {
      std::string at = where + " one_way[" + std::to_string(idx) + "]";
      Operator m = operator_from_json(field(pr, "m", at), at);
      Operator n = operator_from_json(field(pr, "n", at), at);
      if (m.dim() * n.dim() != d) {
        fail(at, "pair dimensions do not multiply to the target dimension");
      }
      s.one_way.push_back({std::move(m), std::move(n)});
      ++idx;
    }
  }
  return s;
}

json transcript_to_json(const sim::Transcript& t) {
  json records = json::array();
  for (const sim::RoundRecord& r : t.records) {
    records.push_back(json::array({r.test_index, r.pass ? 1 : 0}));
  }
  return json{{"seed", t.seed},
              {"strategy", t.strategy_label},
              {"source", t.source_label},
              {"frequency", t.frequency()},
              {"records", std::move(records)}};
}

sim::Transcript transcript_from_json(const json& j, const std::string& where) {
  sim::Transcript t;
  const json& seed = field(j, "seed", where);
  if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() && seed.get<long long>() < 0)) {
    fail(where, "\"seed\" must be a non-negative integer");
  }
  t.seed = seed.get<uint64_t>();
  const json& strat = field(j, "strategy", where);
  const json& src = field(j, "source", where);
  if (!strat.is_string() || !src.is_string()) {
    fail(where, "\"strategy\" and \"source\" must be strings");
  }
  t.strategy_label = strat.get<std::string>();
  t.source_label = src.get<std::string>();

  const json& records = field(j, "records", where);
  if (!records.is_array() || records.empty()) {
    fail(where, "\"records\" must be a non-empty array");
  }
  for (const json& r : records) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer()) {
      fail(where, "records must be [test,pass] pairs");
    }
    int test = r[0].get<int>();
    bool pass;
    if (r[1].is_boolean()) {
      pass = r[1].get<bool>();
    } else if (r[1].is_number_integer() &&
               (r[1].get<int>() == 0 || r[1].get<int>() == 1)) {
      pass = r[1].get<int>() == 1;
    } else {
      fail(where, "record pass flags must be 0, 1, or boolean");
    }
    if (test < 0) fail(where, "record test indices must be non-negative");
    t.records.push_back({test, pass});
  }

  const json& freq = field(j, "frequency", where);
  if (!freq.is_number()) fail(where, "\"frequency\" must be a number");
  if (std::abs(freq.get<double>() - t.frequency()) > kInputTol) {
    fail(where, "stored frequency does not match the records");
  }
  return t;
}

json pm_to_json(const qpv::PMStrategy& p) {
  json tests = json::array();
  for (const qpv::PMTest& t : p.tests) {
    tests.push_back(json{{"p", t.p},
                         {"input", operator_to_json(t.input)},
                         {"effect", operator_to_json(t.effect)}});
  }
  return json{{"d_in", p.d_in}, {"d_out", p.d_out}, {"tests", std::move(tests)}};
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(path, "cannot open file");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    fail(path, e.what());
  }
}

Operator load_operator(const std::string& path) {
  return operator_from_json(load_json(path), path);
}

PureState load_state(const std::string& path) {
  return state_from_json(load_json(path), path);
}

strategies::Strategy load_strategy(const std::string& path) {
  return strategy_from_json(load_json(path), path);
}

sim::Transcript load_transcript(const std::string& path) {
  return transcript_from_json(load_json(path), path);
}

graphs::Graph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(path, "cannot open file");
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(f, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    std::string at = path + ":" + std::to_string(lineno);
    if (n < 0) {
      size_t pos = 0;
      try {
        n = std::stoi(first, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != first.size() || n < 1) {
        fail(at, "first line must be the vertex count");
      }
      std::string extra;
      if (ls >> extra) fail(at, "unexpected token after the vertex count");
      continue;
    }
    int i = 0, j = 0;
    std::istringstream es(line);
    std::string tail;
    if (!(es >> i >> j) || (es >> tail)) {
      fail(at, "edge lines must contain exactly two vertex labels");
    }
    if (i < 1 || i > n || j < 1 || j > n) {
      fail(at, "vertex labels must lie in 1.." + std::to_string(n));
    }
    edges.emplace_back(i - 1, j - 1);
  }
  if (n < 0) fail(path, "file is empty");
  try {
    return graphs::Graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

namespace {

int parse_int(const std::string& text, const std::string& what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) {
    throw std::invalid_argument(what + " expects an integer, got \"" + text +
                                "\"");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) {
    throw std::invalid_argument(what + " expects a number, got \"" + text +
                                "\"");
  }
  return v;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::istringstream s(text);
  while (std::getline(s, item, ',')) {
    out.push_back(parse_double(item, what));
  }
  if (out.empty()) {
    throw std::invalid_argument(what + " expects a comma-separated list");
  }
  return out;
}

}  // namespace

PureState parse_state(const std::string& spec) {
  std::string head = spec;
  std::string arg;
  if (size_t colon = spec.find(':'); colon != std::string::npos) {
    head = spec.substr(0, colon);
    arg = spec.substr(colon + 1);
  }
  if (head == "bell") {
    if (!arg.empty()) throw std::invalid_argument("bell takes no parameter");
    return states::bell_state();
  }
  if (head == "mes") return states::mes_qudit(parse_int(arg, "mes"));
  if (head == "ghz") return states::ghz_state(parse_int(arg, "ghz"));
  if (head == "w") return states::w_state(parse_int(arg, "w"));
  if (head == "dicke") {
    size_t colon = arg.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("dicke expects dicke:n:k");
    }
    return states::dicke_state(parse_int(arg.substr(0, colon), "dicke n"),
                               parse_int(arg.substr(colon + 1), "dicke k"));
  }
  if (head == "schmidt") {
    return states::schmidt_state(
        states::SchmidtVector(parse_double_list(arg, "schmidt")));
  }
  if (head == "twoqubit") {
    return states::two_qubit_state(parse_double(arg, "twoqubit"));
  }
  if (head == "graph") {
    if (arg.empty()) throw std::invalid_argument("graph expects graph:FILE");
    return graphs::graph_state(load_graph(arg));
  }
  throw std::invalid_argument(
      "unknown state spec \"" + spec +
      "\"; expected bell, mes:d, ghz:n, w:n, dicke:n:k, schmidt:l1,l2,..., "
      "twoqubit:theta, or graph:FILE");
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string transcript_csv(const sim::Transcript& t) {
  std::ostringstream out;
  out << "round,test,pass\n";
  for (size_t k = 0; k < t.records.size(); ++k) {
    out << k << ',' << t.records[k].test_index << ','
        << (t.records[k].pass ? 1 : 0) << '\n';
  }
  return out.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) fail(path, "cannot open file for writing");
  f << content;
  if (!f) fail(path, "write failed");
}

}  // namespace qv::io
