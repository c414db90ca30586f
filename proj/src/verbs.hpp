#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dce/scenario.hpp"
#include "dce/units.hpp"

namespace dce::scenario::detail {

/// Typed access to a parameter block with field-path diagnostics. Every key
/// must be consumed; finish() rejects leftovers.
class Params {
 public:
  Params(const json& j, std::string path);

  bool has(const std::string& key) const;
  /// Physical quantity {"value": x, "unit": "..."} converted to natural
  /// units. Dimensionless quantities may be bare numbers.
  double quantity(const std::string& key, Dimension d);
  double quantity_or(const std::string& key, Dimension d, double fallback);
  /// Same, returned in SI.
  double quantity_si(const std::string& key, Dimension d);
  double number(const std::string& key);
  double number_or(const std::string& key, double fallback);
  int integer(const std::string& key);
  int integer_or(const std::string& key, int fallback);
  bool boolean_or(const std::string& key, bool fallback);
  std::string choice(const std::string& key, const std::vector<std::string>& allowed,
                     const std::string& fallback);
  std::vector<int> int_array(const std::string& key, std::size_t size);
  Params object(const std::string& key);
  void finish() const;

  std::string field(const std::string& key) const;

 private:
  const json& at(const std::string& key);

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

using Job = std::function<void(PointResult&)>;

/// Decodes the parameter block of one point into a self-contained job.
/// Throws ValidationError on schema problems; the job itself reports
/// numerical failures by throwing dce::Error.
Job decode_job(Verb verb, const json& params);

}  // namespace dce::scenario::detail
