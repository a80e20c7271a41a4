#include "gqml/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gqml/errors.hpp"

namespace gqml {

namespace {

std::string join(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string join(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

[[noreturn]] void parse_error(const std::string& what, const std::string& pointer) {
  throw Error(ErrorKind::ParseError, what, pointer.empty() ? "/" : pointer);
}

const Json& member(const Json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) parse_error("expected an object", at);
  auto it = obj.find(key);
  if (it == obj.end()) parse_error("missing member \"" + key + "\"", join(at, key));
  return *it;
}

int as_int(const Json& v, const std::string& at) {
  if (!v.is_number_integer()) parse_error("expected an integer", at);
  return v.get<int>();
}

double as_real(const Json& v, const std::string& at) {
  if (!v.is_number()) parse_error("expected a number", at);
  return v.get<double>();
}

const Json& as_array(const Json& v, const std::string& at) {
  if (!v.is_array()) parse_error("expected an array", at);
  return v;
}

std::vector<int> int_vector(const Json& v, const std::string& at) {
  std::vector<int> out;
  for (std::size_t i = 0; i < as_array(v, at).size(); ++i) out.push_back(as_int(v[i], join(at, i)));
  return out;
}

std::vector<double> real_vector(const Json& v, const std::string& at) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(v, at).size(); ++i) out.push_back(as_real(v[i], join(at, i)));
  return out;
}

Table int_table(const Json& v, const std::string& at) {
  Table out;
  for (std::size_t i = 0; i < as_array(v, at).size(); ++i) out.push_back(int_vector(v[i], join(at, i)));
  return out;
}

RealTable real_table(const Json& v, const std::string& at) {
  RealTable out;
  for (std::size_t i = 0; i < as_array(v, at).size(); ++i) out.push_back(real_vector(v[i], join(at, i)));
  return out;
}

// A real table of exactly rows × cols, or all zeros when absent and optional.
RealTable shaped_table(const Json& obj, const std::string& key, const std::string& at, int rows,
                       int cols, bool optional) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (optional) return RealTable(rows, std::vector<double>(cols, 0.0));
    parse_error("missing member \"" + key + "\"", join(at, key));
  }
  const std::string ptr = join(at, key);
  RealTable t = real_table(*it, ptr);
  if (static_cast<int>(t.size()) != rows) {
    throw Error(ErrorKind::ShapeMismatch,
                "expected " + std::to_string(rows) + " rows, got " + std::to_string(t.size()), ptr);
  }
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (static_cast<int>(t[r].size()) != cols) {
      throw Error(ErrorKind::ShapeMismatch,
                  "expected " + std::to_string(cols) + " columns, got " + std::to_string(t[r].size()),
                  join(ptr, r));
    }
  }
  return t;
}

std::vector<std::string> labels(const Json& obj, int count, const std::string& prefix,
                                const std::string& at) {
  auto it = obj.find("labels");
  if (it == obj.end()) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  }
  const std::string ptr = join(at, "labels");
  if (!it->is_array() || static_cast<int>(it->size()) != count) {
    parse_error("expected " + std::to_string(count) + " labels", ptr);
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    if (!(*it)[i].is_string()) parse_error("labels must be strings", join(ptr, i));
    out.push_back((*it)[i].get<std::string>());
  }
  return out;
}

}  // namespace

GroupoidSpec parse_groupoid_spec(const Json& doc) {
  if (!doc.is_object()) parse_error("a groupoid spec must be an object", "");
  const Json& group = member(doc, "group", "");
  const int order = as_int(member(group, "order", "/group"), "/group/order");
  Table cayley = int_table(member(group, "cayley", "/group"), "/group/cayley");
  if (static_cast<int>(cayley.size()) != order) {
    throw Error(ErrorKind::ShapeMismatch, "order does not match the Cayley table", "/group/order");
  }
  std::vector<int> inverses = int_vector(member(group, "inverses", "/group"), "/group/inverses");
  const int identity = as_int(member(group, "identity", "/group"), "/group/identity");
  FiniteGroup G(std::move(cayley), identity, std::move(inverses));

  const Json& space = member(doc, "space", "");
  const int size = as_int(member(space, "size", "/space"), "/space/size");
  Table action = int_table(member(doc, "action", ""), "/action");
  TransformationGroupoid groupoid(std::move(G), size, std::move(action));

  const Json& len = member(doc, "length", "");
  const Json& type = member(len, "type", "/length");
  if (!type.is_string()) parse_error("length type must be a string", "/length/type");
  const auto kind = type.get<std::string>();
  auto length = [&]() {
    if (kind == "table") {
      return validate_length(groupoid, real_table(member(len, "values", "/length"), "/length/values"));
    }
    if (kind == "word") {
      const auto gens = int_vector(member(len, "generators", "/length"), "/length/generators");
      std::vector<double> weights;
      if (len.contains("weights")) weights = real_vector(len["weights"], "/length/weights");
      return word_length(groupoid, gens, weights);
    }
    parse_error("length type must be \"word\" or \"table\"", "/length/type");
  }();

  return GroupoidSpec{groupoid, length, labels(group, order, "g", "/group"),
                      labels(space, size, "x", "/space")};
}

Json groupoid_spec_to_json(const GroupoidSpec& spec) {
  const auto& G = spec.groupoid;
  Json doc;
  doc["group"] = {{"order", G.order()},
                  {"cayley", G.group().cayley()},
                  {"inverses", G.group().inverses()},
                  {"identity", G.identity()},
                  {"labels", spec.group_labels}};
  doc["space"] = {{"size", G.space_size()}, {"labels", spec.space_labels}};
  doc["action"] = G.action();
  doc["length"] = {{"type", "table"}, {"values", spec.length.values()}};
  return doc;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

AlgebraElement parse_element(const TransformationGroupoid& groupoid, const Json& doc) {
  if (!doc.is_object()) parse_error("an element must be an object", "");
  const RealTable re = shaped_table(doc, "re", "", groupoid.order(), groupoid.space_size(), false);
  const RealTable im = shaped_table(doc, "im", "", groupoid.order(), groupoid.space_size(), true);
  AlgebraElement f(groupoid);
  for (int g = 0; g < groupoid.order(); ++g) {
    for (int x = 0; x < groupoid.space_size(); ++x) f(g, x) = Complex(re[g][x], im[g][x]);
  }
  return f;
}

Json element_to_json(const AlgebraElement& f) {
  const auto& G = f.groupoid();
  RealTable re(G.order(), std::vector<double>(G.space_size()));
  RealTable im = re;
  for (int g = 0; g < G.order(); ++g) {
    for (int x = 0; x < G.space_size(); ++x) {
      re[g][x] = f(g, x).real();
      im[g][x] = f(g, x).imag();
    }
  }
  return {{"re", re}, {"im", im}};
}

State parse_state(const TransformationGroupoid& groupoid, const Json& doc) {
  if (!doc.is_object()) parse_error("a state must be an object", "");
  const int n = groupoid.order();
  if (doc.contains("vector")) {
    if (doc.contains("blocks")) parse_error("give either \"blocks\" or \"vector\", not both", "");
    const Json& v = doc["vector"];
    const int x = as_int(member(v, "x", "/vector"), "/vector/x");
    const auto re = real_vector(member(v, "psi_re", "/vector"), "/vector/psi_re");
    std::vector<double> im(re.size(), 0.0);
    if (v.contains("psi_im")) im = real_vector(v["psi_im"], "/vector/psi_im");
    if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n) {
      throw Error(ErrorKind::ShapeMismatch, "psi needs one entry per group element", "/vector");
    }
    ComplexVector psi(n);
    for (int g = 0; g < n; ++g) psi(g) = Complex(re[g], im[g]);
    return vector_state(groupoid, x, psi);
  }
  const Json& blocks = as_array(member(doc, "blocks", ""), "/blocks");
  std::vector<ComplexMatrix> mats(groupoid.space_size(), ComplexMatrix::Zero(n, n));
  std::set<int> seen;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string at = join("/blocks", i);
    const int x = as_int(member(blocks[i], "x", at), join(at, "x"));
    if (x < 0 || x >= groupoid.space_size()) {
      throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(x) + " is not in X", join(at, "x"));
    }
    if (!seen.insert(x).second) parse_error("duplicate block for x = " + std::to_string(x), at);
    const RealTable re = shaped_table(blocks[i], "re", at, n, n, false);
    const RealTable im = shaped_table(blocks[i], "im", at, n, n, true);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) mats[x](r, c) = Complex(re[r][c], im[r][c]);
    }
  }
  return State(groupoid, std::move(mats));
}

Json state_to_json(const State& state) {
  const int n = state.groupoid().order();
  Json blocks = Json::array();
  for (int x = 0; x < state.groupoid().space_size(); ++x) {
    RealTable re(n, std::vector<double>(n));
    RealTable im = re;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        re[r][c] = state.block(x)(r, c).real();
        im[r][c] = state.block(x)(r, c).imag();
      }
    }
    blocks.push_back({{"x", x}, {"re", re}, {"im", im}});
  }
  return {{"blocks", blocks}};
}

Json certificate_to_json(const DistanceCertificate& cert) {
  return {{"status", std::string(to_string(cert.status))},
          {"lower", cert.lower},
          {"upper", cert.upper},
          {"gap", cert.gap},
          {"iterations", cert.iterations},
          {"cuts", cert.cuts},
          {"k", cert.k},
          {"tol", cert.tol},
          {"witness", element_to_json(cert.witness)},
          {"fibre_measures", {cert.fibre_a.weights, cert.fibre_b.weights}}};
}

Json rd_report_to_json(const RdReport& report) {
  Json tails = Json::array();
  for (const auto& t : report.tail_table) tails.push_back({{"n", t.n}, {"tail", t.tail}});
  return {{"p", report.p},
          {"sample_count", report.sample_count},
          {"empirical_c", report.empirical_c},
          {"empirical_c_is_lower_estimate", true},
          {"sampled_c", report.sampled_c},
          {"argmax", element_to_json(report.argmax)},
          {"tail_table", tails}};
}

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_to(std::string& out, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_to(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += v.dump();
  }
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  const std::string im = format_double(std::abs(z.imag()));
  return format_double(z.real()) + (z.imag() < 0.0 ? "-" : "+") + im + "i";
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_to(out, value, indent, 0);
  out += '\n';
  return out;
}

std::string fibre_matrix_csv(const GroupoidSpec& spec, const AlgebraElement& f, int x) {
  const auto m = fibre_matrix(f, x).matrix;
  std::ostringstream out;
  out << "g";
  for (const auto& label : spec.group_labels) out << ',' << label;
  out << '\n';
  for (int g = 0; g < m.rows(); ++g) {
    out << spec.group_labels[g];
    for (int h = 0; h < m.cols(); ++h) out << ',' << format_complex(m(g, h));
    out << '\n';
  }
  return out.str();
}

std::string tail_table_csv(const RdReport& report) {
  std::string out = "n,tail\n";
  for (const auto& t : report.tail_table) out += format_double(t.n) + "," + format_double(t.tail) + "\n";
  return out;
}

}  // namespace gqml
