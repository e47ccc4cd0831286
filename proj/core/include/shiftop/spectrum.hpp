#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shiftop/analysis.hpp"
#include "shiftop/circle.hpp"
#include "shiftop/indices.hpp"

namespace shiftop {

// Origin-centred annulus r_in <= |z| <= r_out.
struct Annulus {
  double r_in = 0.0;
  double r_out = 0.0;
};

enum class Membership : std::uint8_t { inside, outside, boundary };
std::string to_string(Membership m);

struct SpectrumSet {
  int m = 1;
  // Per gamma arc, then per declared limit point.
  std::vector<Annulus> annuli;
  std::vector<Annulus> merged;
  // All m-th roots of the sampled d_m over the periodic arcs.
  std::vector<std::complex<double>> curve;
  // Sampled d_m values, one path per periodic arc, in the z^m plane.
  std::vector<std::vector<std::complex<double>>> curve_paths;
  double curve_resolution = 0.0;
  bool degenerate_gc = false;
  std::vector<std::string> notes;
};

double radius_lebesgue(CircleFunction const& g, Shift const& s, PeriodicStructure const& ps, double p);
double radius_bound(CircleFunction const& g, Shift const& s, PeriodicStructure const& ps, SpaceIndices const& x);

SpectrumSet shift_spectrum(CircleFunction const& d, Shift const& s, PeriodicStructure const& ps,
                           SpaceIndices const& x, int samples = 512);

// Annuli at the repelling and attracting endpoints of a gamma arc.
std::vector<Annulus> one_sided_core_annuli(Shift const& s, GammaArc const& arc, SpaceIndices const& x);

std::vector<Annulus> merge_annuli(std::vector<Annulus> annuli);

Membership spectrum_contains(SpectrumSet const& ss, std::complex<double> z, double tol = 1e-9);

void write_spectrum_csv(std::ostream& out, SpectrumSet const& ss, int decimals = 4);

}  // namespace shiftop
