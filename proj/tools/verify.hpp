#pragma once

// Exact verification suite behind `alphagamma verify`. Each check returns a
// JSON object with a "pass" field; residuals are printed as exact fractions.

#include "alphagamma/numeric.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ag::verify {

struct Setup {
  int n = 4;
  int k = 2;
  Params<Rational> params{Rational(1, 2), Rational(1, 2)};
  int cap = 7;  // largest n for semi-planar enumeration
};

const std::vector<std::string>& check_names();  // without "all"

nlohmann::json stationarity(const Setup& s);
nlohmann::json kernel_equality(const Setup& s);
nlohmann::json lumpability(const Setup& s);
nlohmann::json intertwining(const Setup& s);
nlohmann::json independence(const Setup& s);
// Internal order law at every branch point with c >= 4 children.
nlohmann::json order_law(const Setup& s);

// Runs one named check or "all"; the result carries the schema and setup.
nlohmann::json run(const std::string& check, const Setup& s);

// Rows of both candidate laws of Ĩ for c = 3..cmax.
nlohmann::json tilde_law_table(int cmax, const Params<Rational>& p);

}  // namespace ag::verify
