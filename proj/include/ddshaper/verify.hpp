#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ddshaper/types.hpp"

namespace ddshaper {

struct CheckRow {
  std::string name;
  std::string size;
  double max_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  // Unset sizes fall back to each suite's own default.
  std::optional<int> M;
  std::optional<int> N;
  std::optional<int> Q;
  double T = 1.0;
  double beta = 0.3;
  unsigned seed = 12345;
  // Replaces the default tolerance of every row when set.
  std::optional<double> tol;
};

// lemmas, theorem1, theorem2, theorem3, corollary1, figures, loopback, all.
std::vector<std::string> suite_names();
std::vector<CheckRow> run_suite(const std::string& suite, const VerifyOptions& opt);

std::vector<CheckRow> lemma_suite(const VerifyOptions& opt);
std::vector<CheckRow> theorem1_suite(const VerifyOptions& opt);
std::vector<CheckRow> theorem2_suite(const VerifyOptions& opt);
std::vector<CheckRow> theorem3_suite(const VerifyOptions& opt);
std::vector<CheckRow> corollary1_suite(const VerifyOptions& opt);
std::vector<CheckRow> figures_suite(const VerifyOptions& opt);
std::vector<CheckRow> loopback_suite(const VerifyOptions& opt);

void write_rows_csv(std::ostream& os, const std::vector<CheckRow>& rows);

}  // namespace ddshaper
