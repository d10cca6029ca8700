#include "umk/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace umk {

Rational rational_from_json(const Json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash))) / Rational(BigInt(s.substr(slash + 1)));
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    // the exact binary value of the double: d = m * 2^(e-53), m integer
    double d = v.get<double>();
    int e = 0;
    double m = std::frexp(d, &e);
    long long mantissa = std::llround(std::ldexp(m, 53));
    Rational q(mantissa);
    return q * rational_pow(Rational(2), e - 53);
  }
  fail(errc::config_error, "expected a rational value");
}

BallTree tree_from_json(const Json& j) {
  if (j.contains("padic")) {
    const Json& p = j.at("padic");
    return BallTree::padic(p.at("p").get<long>(), p.at("depth").get<int>(),
                           p.value("dim", 1));
  }
  if (!j.contains("nodes") || !j.contains("leaves"))
    fail(errc::config_error, "tree spec needs nodes[] and leaves[]");
  std::vector<NodeSpec> spec;
  for (const Json& n : j.at("nodes")) {
    NodeSpec s;
    s.id = n.at("id").get<int>();
    s.parent = n.at("parent").is_null() ? -1 : n.at("parent").get<int>();
    if (n.contains("phi")) s.phi = rational_from_json(n.at("phi"));
    if (n.contains("label")) s.label = n.at("label").get<std::string>();
    spec.push_back(std::move(s));
  }
  for (const Json& l : j.at("leaves")) {
    int id = l.at("id").get<int>();
    bool found = false;
    for (auto& s : spec)
      if (s.id == id) {
        s.mass = rational_from_json(l.at("mass"));
        found = true;
        break;
      }
    if (!found) {
      NodeSpec s;
      s.id = id;
      if (!l.contains("parent")) fail(errc::config_error, "leaf entry needs a parent");
      s.parent = l.at("parent").get<int>();
      s.mass = rational_from_json(l.at("mass"));
      spec.push_back(std::move(s));
    }
  }
  return BallTree::build(spec);
}

Sigma sigma_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "standard") return Sigma::standard();
  if (kind == "padic") {
    double alpha = j.at("alpha").get<double>();
    double b = j.value("b", 2.0);
    long p = j.value("p", 0L);
    if (p >= 2) {
      double half = alpha * 2.0;
      if (std::abs(half - std::round(half)) < 1e-12 && std::abs(b - p) < 1e-12)
        return Sigma::padic_exact(p, static_cast<long>(std::round(half)));
    }
    return Sigma::padic(alpha, b);
  }
  if (kind == "table") {
    std::vector<std::pair<double, double>> pts;
    for (const Json& row : j.at("points"))
      pts.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    return Sigma::table(std::move(pts));
  }
  fail(errc::config_error, "unknown sigma kind " + kind);
}

Walk<Rational> walk_from_json(const Json& j) {
  BallTree skeleton = tree_from_json(j.at("tree"));
  Walk<Rational> w;
  w.shape = TreeShape::of_balltree(skeleton);
  int n = w.shape.size();
  w.up.assign(n, Rational(0));
  w.down.resize(n);
  for (int v = 0; v < n; ++v)
    w.down[v].assign(w.shape.vtx[v].children.size(), Rational(0));
  std::vector<int> node_of_ext(n, -1);
  for (int v = 0; v < n; ++v) node_of_ext[skeleton.node(v).external_id] = v;
  for (const Json& t : j.at("transitions")) {
    int from = node_of_ext.at(t.at("from").get<int>());
    int to = node_of_ext.at(t.at("to").get<int>());
    Rational q = rational_from_json(t.at("p"));
    if (w.shape.vtx[to].parent == from)
      w.down[from][w.shape.vtx[to].child_slot] = q;
    else if (w.shape.vtx[from].parent == to)
      w.up[from] = q;
    else
      fail(errc::config_error, "transition on a non-edge");
  }
  w.validate();
  return w;
}


AnalyticModel analytic_from_json(const Json& j) {
  std::string model = j.at("model").get<std::string>();
  long p = j.at("p").get<long>();
  if (model == "vladimirov") return AnalyticModel::vladimirov(p, j.at("alpha").get<double>());
  if (model == "zp") return AnalyticModel::zp(p, j.at("alpha").get<double>());
  if (model == "taibleson")
    return AnalyticModel::taibleson(p, j.at("n").get<int>(), j.at("alpha").get<double>());
  if (model == "product") {
    std::vector<double> alphas;
    for (const Json& a : j.at("alphas")) alphas.push_back(a.get<double>());
    return AnalyticModel::product(p, std::move(alphas));
  }
  fail(errc::config_error, "unknown analytic model " + model);
}

Json spectrum_to_json(const EigenSystem& sys, const BallTree& tree) {
  Json out = Json::array();
  for (auto& [lambda, count] : sys.multiplicities()) {
    Json entry;
    entry["lambda"] = lambda;
    entry["multiplicity"] = count;
    // first ball carrying this eigenvalue
    for (const auto& m : sys.modes)
      if (std::abs(m.lambda - lambda) <= 1e-9 * std::max(1.0, std::abs(lambda))) {
        entry["ball"] = m.parent >= 0 ? tree.node(m.parent).external_id
                                      : tree.node(tree.root()).external_id;
        break;
      }
    out.push_back(entry);
  }
  return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& schema_comment,
                     const std::vector<std::string>& columns) {
  auto* f = new std::ofstream(path);
  if (!f->good()) {
    delete f;
    fail(errc::config_error, "cannot open " + path);
  }
  out_ = f;
  (*f) << "# " << schema_comment << "\n";
  for (size_t i = 0; i < columns.size(); ++i) (*f) << (i ? "," : "") << columns[i];
  (*f) << "\n";
}

CsvWriter::~CsvWriter() { delete static_cast<std::ofstream*>(out_); }

void CsvWriter::row(const std::vector<double>& values) {
  auto& f = *static_cast<std::ofstream*>(out_);
  f.precision(17);
  for (size_t i = 0; i < values.size(); ++i) f << (i ? "," : "") << values[i];
  f << "\n";
}

void CsvWriter::row_raw(const std::string& line) {
  *static_cast<std::ofstream*>(out_) << line << "\n";
}

}  // namespace umk
