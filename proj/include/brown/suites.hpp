#pragma once

#include "brown/cover.hpp"
#include "brown/potential.hpp"
#include "brown/rng.hpp"

namespace brown {

/// Knobs shared by the property suites; the acceptance harness pins these to
/// the advertised trial counts, the CLI exposes smaller defaults.
struct SuiteParams {
  std::uint64_t seed = 1;
  int trials = 10;       // models / configurations per suite
  int inner = 20;        // per-model draws (alphas, boxes, ...)
  int d = 8;             // base dimension (suites may vary around it)
  int depth = 8;         // cover / grid depth where applicable
  Tolerances tol;
};

Report suite_characterization(const SuiteParams& p);   // log-det identity
Report suite_pushforward(const SuiteParams& p);        // polynomial images
Report suite_sigma_additivity(const SuiteParams& p);   // idempotent-valued measure
Report suite_lattice(const SuiteParams& p);            // K(A)/K(B) identities
Report suite_restriction(const SuiteParams& p);        // compression identity
Report suite_maximality(const SuiteParams& p);         // P(B) dominates sub-joins
Report suite_box_formula(const SuiteParams& p);        // meet route vs cluster route
Report suite_tensor(const SuiteParams& p);             // product / convolution laws
Report suite_radius(const SuiteParams& p);             // modified spectral radius
Report suite_preimage(const SuiteParams& p);           // box covers and preimages
Report suite_borel(const SuiteParams& p);              // shrinking-open meets
Report suite_extension(const SuiteParams& p);          // grid box function
Report suite_normal(const SuiteParams& p);             // spectral-measure degeneration

/// Registered suite names, in canonical order.
const std::vector<std::string>& suite_names();

/// Runs one suite by name; throws invalid_argument for unknown names.
Report run_suite(const std::string& name, const SuiteParams& p);

/// Helpers shared with the acceptance harness.

/// A 1-dim box whose boundary stays at least `margin` away from every
/// coordinate-i atom of mu; throws after too many failed draws.
Region random_safe_box(const AtomicMeasure& mu, int coord, double margin, Rng& rng);

/// A random dyadic partition of C^n into at most `max_regions` regions that
/// cover the whole space; every atom keeps `margin` distance from all cell
/// boundaries.
std::vector<Region> random_dyadic_partition(const AtomicMeasure& mu, int max_regions,
                                            double margin, Rng& rng);

/// Random polynomial in n variables of total degree <= max_degree with unit
/// scale coefficients; never constant.
Polynomial random_polynomial(int nvars, int max_degree, Rng& rng);

}  // namespace brown
