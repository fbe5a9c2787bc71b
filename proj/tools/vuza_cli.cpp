// Command-line front end: verification, canonical forms, order queries,
// construction, enumeration, and catalog/report emission.
//
// Exit codes: 0 success, 1 semantic failure (not a canon), 2 usage/parse
// error, 3 budget exhausted (partial output written).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vuza/vuza.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kUsage = 2;
constexpr int kPartial = 3;

vuza::SearchBudget make_budget(std::uint64_t nodes, double seconds) {
  vuza::SearchBudget b;
  if (nodes > 0) b.max_nodes = nodes;
  if (seconds > 0) b.max_seconds = seconds;
  return b;
}

// "48+18" -> (48, 18)
vuza::Substitution parse_substitution(const std::string& text) {
  auto plus = text.find('+');
  if (plus == std::string::npos || plus == 0 || plus + 1 == text.size())
    throw std::invalid_argument("substitution must look like '<elem>+<add>'");
  return {std::stoi(text.substr(0, plus)), std::stoi(text.substr(plus + 1))};
}

vuza::ResidueSet parse_residue_list(const std::string& text, int modulus) {
  return vuza::parse_set(std::to_string(modulus) + ":" + text);
}

struct OutputSink {
  std::ofstream file;
  std::ostream& stream() { return file.is_open() ? file : std::cout; }
  int open(const std::string& path) {
    if (path.empty()) return kOk;
    file.open(path);
    if (!file) {
      std::cerr << "cannot open output file: " << path << "\n";
      return kUsage;
    }
    return kOk;
  }
};

int emit_enumeration(const vuza::EnumerationResult& result,
                     const std::string& format, const std::string& out_path) {
  OutputSink sink;
  if (int rc = sink.open(out_path); rc != kOk) return rc;
  if (format == "records")
    vuza::write_catalog(sink.stream(), result.records);
  else
    vuza::write_report(sink.stream(), result.report);
  return result.report.budget_exhausted ? kPartial : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vuza canon toolkit: construct, verify, canonicalize and "
               "enumerate non-periodic factorizations of Z_N"};
  app.require_subcommand(1);

  // verify
  std::string verify_s, verify_r;
  auto* verify = app.add_subcommand("verify", "check that (S, R) is a Vuza canon");
  verify->add_option("S", verify_s, "set literal <N>:<r1>,<r2>,...")->required();
  verify->add_option("R", verify_r, "set literal <N>:<r1>,<r2>,...")->required();

  // primeform
  std::string pf_s;
  auto* primeform = app.add_subcommand("primeform", "canonical prime form and basic form");
  primeform->add_option("S", pf_s, "set literal")->required();

  // orders
  int orders_limit = 0;
  auto* orders = app.add_subcommand("orders", "Vuza orders up to a limit");
  orders->add_option("limit", orders_limit, "inclusive upper bound")->required();

  // decompose
  int decompose_n = 0;
  auto* decompose = app.add_subcommand("decompose", "admissible N = n1*n2*n3*p1*p2 decompositions");
  decompose->add_option("N", decompose_n, "modulus")->required();

  // construct
  std::vector<int> cons_params;
  int cons_alpha = 1, cons_beta = 1;
  std::string cons_k1, cons_k2;
  std::vector<std::string> cons_pu, cons_pv;
  auto* construct = app.add_subcommand("construct", "build one canon from block parameters");
  construct->add_option("params", cons_params, "n1,p1,n2,p2,n3")->required()->delimiter(',');
  construct->add_option("--alpha", cons_alpha, "dilation multiplier for U'");
  construct->add_option("--beta", cons_beta, "dilation multiplier for V'");
  construct->add_option("--k1", cons_k1, "comma list: transversal part paired with U+V'");
  construct->add_option("--k2", cons_k2, "comma list: transversal part paired with U'+V");
  construct->add_option("--perturb-u", cons_pu, "substitution <elem>+<add> applied to U");
  construct->add_option("--perturb-v", cons_pv, "substitution <elem>+<add> applied to V");

  // enumerate
  int enum_n = 0, enum_jobs = 1;
  std::string enum_engine = "brute", enum_format = "text", enum_out;
  std::uint64_t enum_nodes = 0;
  double enum_seconds = 0;
  auto* enumerate = app.add_subcommand("enumerate", "classify all canons of Z_N");
  enumerate->add_option("N", enum_n, "modulus")->required();
  enumerate->add_option("--engine", enum_engine, "brute | constructive")
      ->check(CLI::IsMember({"brute", "constructive"}));
  enumerate->add_option("--budget-nodes", enum_nodes, "search node limit");
  enumerate->add_option("--budget-seconds", enum_seconds, "wall clock limit");
  enumerate->add_option("--jobs", enum_jobs, "worker count")->check(CLI::PositiveNumber);
  enumerate->add_option("--format", enum_format, "text | records")
      ->check(CLI::IsMember({"text", "records"}));
  enumerate->add_option("--out", enum_out, "output file (default stdout)");

  // brute
  std::string brute_s, brute_out;
  std::uint64_t brute_nodes = 0;
  double brute_seconds = 0;
  bool brute_nonperiodic = false;
  auto* brute = app.add_subcommand("brute", "all complements of a tile S");
  brute->add_option("S", brute_s, "set literal with 0 in S")->required();
  brute->add_option("--budget-nodes", brute_nodes, "search node limit");
  brute->add_option("--budget-seconds", brute_seconds, "wall clock limit");
  brute->add_flag("--nonperiodic-only", brute_nonperiodic, "keep only non-periodic complements");
  brute->add_option("--out", brute_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) {
      auto chk = vuza::is_vuza_canon(vuza::parse_set(verify_s),
                                     vuza::parse_set(verify_r));
      std::cout << chk.describe() << "\n";
      return chk.ok ? kOk : kSemantic;
    }

    if (*primeform) {
      vuza::ResidueSet s = vuza::parse_set(pf_s);
      std::cout << vuza::to_string(vuza::prime_form(s)) << "\n"
                << vuza::basic_form(s).str() << "\n";
      return kOk;
    }

    if (*orders) {
      bool first = true;
      for (int n : vuza::list_vuza_orders(orders_limit)) {
        std::cout << (first ? "" : " ") << n;
        first = false;
      }
      std::cout << "\n";
      return kOk;
    }

    if (*decompose) {
      auto decomps = vuza::vuza_decompositions(decompose_n);
      if (decomps.empty()) {
        std::cout << decompose_n << " is not a Vuza order\n";
        return kSemantic;
      }
      for (const auto& q : decomps)
        std::cout << "n1=" << q.n1 << " p1=" << q.p1 << " n2=" << q.n2
                  << " p2=" << q.p2 << " n3=" << q.n3 << "\n";
      return kOk;
    }

    if (*construct) {
      if (cons_params.size() != 5)
        throw std::invalid_argument("params must be n1,p1,n2,p2,n3");
      vuza::VuzaParams q{cons_params[0], cons_params[1], cons_params[2],
                         cons_params[3], cons_params[4]};
      vuza::validate(q);
      const int n = static_cast<int>(q.order());

      vuza::BuildingBlocks blocks = [&] {
        if (cons_k1.empty() && cons_k2.empty())
          return vuza::base_blocks(q, cons_alpha, cons_beta);
        if (cons_k1.empty() || cons_k2.empty())
          throw std::invalid_argument("--k1 and --k2 must be given together");
        return vuza::base_blocks(q, cons_alpha, cons_beta,
                                 parse_residue_list(cons_k1, n),
                                 parse_residue_list(cons_k2, n));
      }();

      if (!cons_pu.empty() || !cons_pv.empty()) {
        std::vector<vuza::Substitution> us, vs;
        for (const auto& t : cons_pu) us.push_back(parse_substitution(t));
        for (const auto& t : cons_pv) vs.push_back(parse_substitution(t));
        blocks = vuza::perturb_R(blocks, us, vs);
      }

      vuza::CanonPair canon = vuza::construct_canon(blocks);
      std::cout << "S = " << vuza::to_string(canon.S) << "\n"
                << "R = " << vuza::to_string(canon.R) << "\n";
      return kOk;
    }

    if (*enumerate) {
      vuza::SearchBudget budget = make_budget(enum_nodes, enum_seconds);
      vuza::EnumerationResult result =
          enum_engine == "constructive"
              ? vuza::enumerate_vuza_constructive(enum_n, budget)
              : vuza::enumerate_vuza_brute(enum_n, budget, enum_jobs);
      return emit_enumeration(result, enum_format, enum_out);
    }

    if (*brute) {
      vuza::ResidueSet s = vuza::parse_set(brute_s);
      vuza::ComplementsResult res = vuza::complements_brute(
          s, make_budget(brute_nodes, brute_seconds), brute_nonperiodic);
      OutputSink sink;
      if (int rc = sink.open(brute_out); rc != kOk) return rc;
      for (const auto& r : res.complements)
        sink.stream() << vuza::to_string(r) << "\n";
      return res.partial ? kPartial : kOk;
    }
  } catch (const vuza::NonPeriodicityError& e) {
    std::cerr << e.what() << "\n";
    return kSemantic;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kSemantic;
  }
  return kUsage;
}
