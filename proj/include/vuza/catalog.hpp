#pragma once
// Serialization of enumeration output: a JSON-lines catalog (one canon per
// line) and a fixed-width text report of per-decomposition counts.

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vuza/enumeration.hpp"

namespace vuza {

inline void write_catalog(std::ostream& os,
                          const std::vector<CanonRecord>& records) {
  for (const auto& rec : records) {
    nlohmann::json j;
    j["N"] = rec.modulus;
    if (rec.params) {
      j["params"] = {{"n1", rec.params->n1},
                     {"p1", rec.params->p1},
                     {"n2", rec.params->n2},
                     {"p2", rec.params->p2},
                     {"n3", rec.params->n3}};
    }
    j["S"] = rec.s_prime.elements();
    j["R"] = rec.r_prime.elements();
    j["provenance"] = provenance_name(rec.provenance);
    os << j.dump() << '\n';
  }
}

inline std::vector<CanonRecord> read_catalog(std::istream& is) {
  std::vector<CanonRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    CanonRecord rec;
    rec.modulus = j.at("N").get<int>();
    if (j.contains("params")) {
      const auto& p = j.at("params");
      rec.params = VuzaParams{p.at("n1").get<int>(), p.at("p1").get<int>(),
                              p.at("n2").get<int>(), p.at("p2").get<int>(),
                              p.at("n3").get<int>()};
    }
    rec.s_prime = ResidueSet(rec.modulus, j.at("S").get<std::vector<int>>());
    rec.r_prime = ResidueSet(rec.modulus, j.at("R").get<std::vector<int>>());
    auto prov = provenance_from_name(j.at("provenance").get<std::string>());
    if (!prov) throw std::invalid_argument("unknown provenance tag");
    rec.provenance = *prov;
    out.push_back(std::move(rec));
  }
  return out;
}

inline void write_report(std::ostream& os, const EnumerationReport& report) {
  os << "N = " << report.modulus << "  engine = " << report.engine;
  if (report.budget_exhausted) os << "  (budget exhausted, partial)";
  os << '\n';
  os << std::setw(6) << "N" << std::setw(5) << "n1" << std::setw(5) << "p1"
     << std::setw(5) << "n2" << std::setw(5) << "p2" << std::setw(5) << "n3"
     << std::setw(6) << "|S|" << std::setw(6) << "|R|" << std::setw(8) << "#S"
     << std::setw(8) << "#R" << std::setw(7) << "exact" << '\n';
  for (const auto& row : report.rows) {
    os << std::setw(6) << report.modulus << std::setw(5) << row.params.n1
       << std::setw(5) << row.params.p1 << std::setw(5) << row.params.n2
       << std::setw(5) << row.params.p2 << std::setw(5) << row.params.n3
       << std::setw(6) << row.size_s << std::setw(6) << row.size_r
       << std::setw(8) << row.count_s << std::setw(8) << row.count_r
       << std::setw(7) << (row.exact ? "yes" : "no") << '\n';
  }
  os << "distinct S forms: " << report.global_count_s
     << "  distinct R forms: " << report.global_count_r << '\n';
}

inline std::string report_to_string(const EnumerationReport& report) {
  std::ostringstream os;
  write_report(os, report);
  return os.str();
}

}  // namespace vuza
