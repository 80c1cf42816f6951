#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbf/bfunction.hpp"
#include "lbf/multipoly.hpp"
#include "lbf/unipoly.hpp"
#include "lbf/weights.hpp"

namespace lbf {

using ParamPoint = std::vector<Rational>;

struct StratumSpec {
  std::string label;
  /// Polynomials in the parameters that vanish on the stratum.
  std::vector<MultiPoly> vanishing;
  /// The stratum avoids the common zero set of these.
  std::vector<MultiPoly> excluded;
  RootList expected_roots;
  /// Only the dimensions the source tables state.
  std::map<Rational, std::size_t> expected_dims;
  std::vector<ParamPoint> samples;
};

struct CatalogEntry {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> params;
  /// Over vars followed by params.
  MultiPoly template_poly;
  WeightSystem weights;
  /// Over params; must not vanish at any sample.
  std::optional<MultiPoly> constraint;
  RootList bst;
  /// The list exactly as printed, when it differs from bst.
  std::optional<RootList> bst_printed;
  std::vector<std::string> notes;
  std::vector<StratumSpec> strata;

  /// True when the modality constraint is present.
  bool has_modulus() const { return constraint.has_value(); }
  const StratumSpec* find_stratum(std::string_view label) const;
};

/// The 20 bundled entries. The text is compiled into the library.
const std::vector<CatalogEntry>& load_catalog();

/// Parses catalog text and validates every sample against its stratum.
/// Throws ParseError (position = line number) or PreconditionError.
std::vector<CatalogEntry> parse_catalog(std::string_view text);

/// Throws PreconditionError for unknown names.
const CatalogEntry& find_entry(std::string_view name);

/// Substitutes the parameters; the result lives over entry.vars.
MultiPoly specialize(const CatalogEntry& entry, std::span<const Rational> point);

/// Vanishing polynomials are zero, the excluded ones are not all zero, and the
/// constraint (if any) is nonzero.
bool stratum_member(std::span<const Rational> point, const StratumSpec& stratum,
                    const std::optional<MultiPoly>& constraint);

/// The stratum on which the specialization equals the weighted-homogeneous
/// part: the deepest stratum, or for modulus entries the second one
/// restricted to u2 = 0.
const StratumSpec& f0_stratum(const CatalogEntry& entry);

/// wh_bfunction_roots(weights) equals the expected roots of f0_stratum.
bool wh_crosscheck(const CatalogEntry& entry);

enum class SampleStatus { Pass, RootMismatch, DimMismatch, ResourceError, Error };

std::string to_string(SampleStatus s);

struct SampleOutcome {
  std::string stratum;
  ParamPoint point;
  std::string polynomial;
  SampleStatus status = SampleStatus::Error;
  RootList computed;
  std::map<Rational, std::size_t> dims;
  std::size_t milnor = 0;
  /// Expected but not computed, and computed but not expected.
  RootList missing, unexpected;
  std::string message;
  double seconds = 0;
};

struct VerificationReport {
  std::string entry;
  std::vector<SampleOutcome> samples;
  bool wh_crosscheck = false;
  double seconds = 0;
  bool passed() const;
};

struct VerifyOptions {
  /// Stratum labels to run; empty means all.
  std::vector<std::string> strata;
  BFunctionOptions bfunction;
  /// Concurrent samples.
  unsigned jobs = 1;
  /// Wall-clock limit per sample.
  std::optional<std::chrono::seconds> budget;
};

/// Runs local_bfunction_swh on every selected sample and compares with the
/// expected data. Resource errors are recorded per sample.
VerificationReport verify_entry(const CatalogEntry& entry, const VerifyOptions& opts = {});

}  // namespace lbf
