#pragma once

// Channel documents (JSON):
//   {"kraus": [matrix, ...]}           matrix = array of rows, entry = [re, im]
//   {"family": name, ...params}        identity{n}, depolarizing{n,t}, werner_holevo{n},
//                                      rescaling{n,t,star: "identity"|"transpose"},
//                                      dwcc{n, p: [[x,y,w],...]}, dwcc_uniform_subset{n, pairs: [[x,y],...]}
// A `channel show --format json` report is accepted too.

#include "moe/channels.hpp"
#include "moe/linalg.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace moe {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A document that parsed but describes something that fails a channel invariant.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string invariant, const std::string& detail)
      : std::runtime_error("verification failed: " + invariant + (detail.empty() ? "" : " (" + detail + ")")),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

namespace detail {

inline const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

inline int int_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

inline double number_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

inline ComplexMatrix parse_matrix(const json& m) {
  if (!m.is_array() || m.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(m.size());
  if (!m[0].is_array() || m[0].empty()) throw ParseError("matrix row must be a non-empty array");
  const auto cols = static_cast<Eigen::Index>(m[0].size());
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix rows");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix entry must be [re, im]");
      out(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return out;
}

inline void require_n(int n, int min) {
  if (n < min) throw VerificationError("dimension", "n must be >= " + std::to_string(min));
}

inline void require_weyl_index(int x, int y, int n) {
  if (x < 0 || x >= n || y < 0 || y >= n) throw VerificationError("weyl_index_range", "index outside Z_n");
}

}  // namespace detail

inline Map channel_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("channel document must be a JSON object");
  // Reports from `channel show --format json` carry the channel under results.channel.
  if (doc.contains("results") && doc.at("results").is_object() && doc.at("results").contains("channel"))
    return channel_from_json(doc.at("results").at("channel"));
  if (doc.contains("kraus")) {
    const json& list = doc.at("kraus");
    if (!list.is_array() || list.empty()) throw ParseError("\"kraus\" must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& m : list) kraus.push_back(detail::parse_matrix(m));
    for (const auto& a : kraus)
      if (a.rows() != kraus[0].rows() || a.cols() != kraus[0].cols())
        throw VerificationError("kraus_shape", "Kraus operators differ in shape");
    Channel c(std::move(kraus));
    if (!c.flags().trace_preserving) {
      ComplexMatrix tp = -ComplexMatrix::Identity(c.in_dim(), c.in_dim());
      for (const auto& a : c.kraus()) tp += a.adjoint() * a;
      std::ostringstream os;
      os << "||sum A^dagger A - I||_F = " << tp.norm();
      throw VerificationError("trace_preserving", os.str());
    }
    return c;
  }
  if (!doc.contains("family")) throw ParseError("channel document needs \"kraus\" or \"family\"");
  if (!doc.at("family").is_string()) throw ParseError("\"family\" must be a string");
  const std::string family = doc.at("family").get<std::string>();

  if (family == "identity") {
    const int n = detail::int_field(doc, "n");
    detail::require_n(n, 1);
    return identity_channel(n);
  }
  if (family == "depolarizing" || family == "rescaling") {
    const int n = detail::int_field(doc, "n");
    detail::require_n(n, 1);
    const double t = detail::number_field(doc, "t");
    if (!(std::abs(t) <= 1.0)) throw VerificationError("abs_t_le_1", "|t| must be <= 1");
    Star star = Star::identity;
    if (family == "rescaling" && doc.contains("star")) {
      const json& s = doc.at("star");
      if (!s.is_string()) throw ParseError("\"star\" must be a string");
      if (s == "identity") star = Star::identity;
      else if (s == "transpose") star = Star::transpose;
      else throw ParseError("\"star\" must be \"identity\" or \"transpose\"");
    }
    return rescaling_map(n, t, star);
  }
  if (family == "werner_holevo") {
    const int n = detail::int_field(doc, "n");
    detail::require_n(n, 2);
    return werner_holevo_channel(n);
  }
  if (family == "dwcc") {
    const int n = detail::int_field(doc, "n");
    detail::require_n(n, 1);
    const json& p = detail::field(doc, "p");
    if (!p.is_array() || p.empty()) throw ParseError("\"p\" must be a non-empty array of [x, y, weight]");
    std::vector<WeylWeight> weights;
    double total = 0;
    for (const auto& e : p) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_number())
        throw ParseError("dwcc weight entry must be [x, y, weight]");
      WeylWeight w{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()};
      detail::require_weyl_index(w.x, w.y, n);
      if (w.weight < 0) throw VerificationError("nonnegative_weights", "negative weight");
      total += w.weight;
      weights.push_back(w);
    }
    if (std::abs(total - 1.0) > 1e-10) throw VerificationError("weights_sum_to_one", "weights sum to " + std::to_string(total));
    return dwcc_channel(n, weights);
  }
  if (family == "dwcc_uniform_subset") {
    const int n = detail::int_field(doc, "n");
    detail::require_n(n, 1);
    const json& pairs = detail::field(doc, "pairs");
    if (!pairs.is_array() || pairs.empty()) throw ParseError("\"pairs\" must be a non-empty array of [x, y]");
    std::vector<std::pair<int, int>> list;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : pairs) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ParseError("pair entry must be [x, y]");
      std::pair<int, int> xy{e[0].get<int>(), e[1].get<int>()};
      detail::require_weyl_index(xy.first, xy.second, n);
      if (!seen.insert(xy).second) throw VerificationError("distinct_pairs", "repeated pair");
      list.push_back(xy);
    }
    return dwcc_uniform_subset(n, list);
  }
  throw ParseError("unknown family \"" + family + "\"");
}

inline Map read_channel_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return channel_from_json(doc);
}

inline Map read_channel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_channel_text(ss.str());
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Kraus document; doubles are written in shortest round-trip form, so re-reading is bit-exact.
inline json channel_to_json(const Channel& c) {
  json list = json::array();
  for (const auto& a : c.kraus()) list.push_back(matrix_to_json(a));
  return json{{"kraus", std::move(list)}};
}

}  // namespace moe
