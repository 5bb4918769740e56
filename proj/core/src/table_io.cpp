#include <fstream>
#include <sstream>

#include <json.hpp>

#include "calogero/coefficients.hpp"
#include "calogero/errors.hpp"

namespace calogero {

std::string to_json(const CoefficientTable& table) {
  nlohmann::ordered_json doc;
  doc["N"] = table.n();
  doc["ell"] = table.ell();
  doc["representation"] = std::string(to_string(table.representation()));
  doc["status"] = std::string(to_string(table.status()));
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [m, v] : table.terms()) {
    nlohmann::ordered_json term;
    term["m"] = std::vector<int>(m.begin(), m.end());
    term["value"] = to_string(v);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc.dump(1) + "\n";
}

CoefficientTable table_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    const int n = doc.at("N").get<int>();
    const int ell = doc.at("ell").get<int>();
    const auto rep = parse_representation(doc.at("representation").get<std::string>());
    const auto status = parse_status(doc.at("status").get<std::string>());
    std::map<MultiIndex, BigRational> terms;
    for (const auto& term : doc.at("terms")) {
      MultiIndex m;
      for (int e : term.at("m").get<std::vector<int>>()) {
        if (e < 0 || e > 255) throw DomainError("multi-index entry out of range");
        m.push_back(static_cast<std::uint8_t>(e));
      }
      auto [it, inserted] = terms.emplace(std::move(m), parse_rational(term.at("value").get<std::string>()));
      if (!inserted) throw DomainError("duplicate multi-index in table");
    }
    return CoefficientTable(n, ell, rep, status, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed coefficient table: ") + e.what());
  }
}

CoefficientTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return table_from_json(buffer.str());
}

void save_table(const CoefficientTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write table file '" + path + "'");
  out << to_json(table);
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace calogero
