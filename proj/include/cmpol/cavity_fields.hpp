#pragma once

#include <array>

#include "cmpol/params.hpp"
#include "cmpol/susceptibility.hpp"

namespace cmpol {

enum class EllipseHandedness { left, right, linear };

/// Polarisation state of the real, time-domain field locus Re[h e^{i w t}].
/// "right" means the field vector rotates counter-clockwise viewed from +z,
/// the sense that matches Larmor precession for bias along +z.
struct PolarisationEllipse {
  double axial_ratio;      // minor/major axis, in [0, 1]; 0 = linear, 1 = circular
  EllipseHandedness handedness;
  double major_axis_angle; // [rad], in (-pi/2, pi/2]
};

/// Transverse magnetic field (h_x, h_y) of a TE_mn0 mode at (x, y):
///   h_x =  i A (k0y / (w_c mu0)) sin(k0x x) cos(k0y y)
///   h_y = -i A (k0x / (w_c mu0)) cos(k0x x) sin(k0y y)
/// with k0x = m pi / a, k0y = n pi / b.  The z component vanishes for l = 0.
cvec2 te_mode_field(const CavityParams& cavity, ModeIndex mode, double x, double y,
                    double amplitude = 1.0);

/// Two-port superposition  h_c = h(mode1) + delta e^{i phi} * h(mode2),
/// with the port-2 coupler orientation fixed so that at the cavity centre the
/// field reduces to the drive convention (1, delta e^{i phi}) times a common
/// prefactor.
cvec2 superposed_field(const CavityParams& cavity, const DriveState& drive, double x,
                       double y, double amplitude = 1.0);

/// Ellipse traced by Re[h_c e^{i w t}] at a point. Throws DegenerateField if
/// the field vanishes there.
PolarisationEllipse polarisation_at_point(const CavityParams& cavity,
                                          const DriveState& drive, double x, double y);

/// Polarisation state of an explicit complex field vector.
PolarisationEllipse polarisation_of(const cvec2& h);

/// Polarisation energy factor  1 + delta^2 + 2 sigma delta sin(phi)  with
/// sigma = -h0_sign. Equals 4 at matched circular drive, 0 at opposed
/// circular, 1 at delta = 0.
double polarisation_factor(const DriveState& drive);

/// Closed-form total cavity energy of the (1,2)/(2,1) square-cavity pair:
///   W_c = 5 pi^2 (1 + delta^2) c A^2 / (2 mu0 w_c^2).
/// Throws UnsupportedModePair for any other geometry or mode pair.
double cavity_energy_analytic(const CavityParams& cavity, const DriveState& drive,
                              double amplitude = 1.0);

/// W_c = 2 mu0 Int_v |h_c|^2 dv by Gauss-Legendre quadrature (order points per
/// transverse axis; the integrand is z-independent).
double cavity_energy_numeric(const CavityParams& cavity, const DriveState& drive,
                             int quadrature_order, double amplitude = 1.0);

/// Magnetic energy at the sample,
///   W_p = mu0 delta_v [ |h_x|^2 + |h_y|^2 + 2 sigma Im(h_y h_x*) ],
/// evaluated with the local field at the sphere centre (uniform-field
/// approximation; the sphere is ~200x smaller than the cavity). At the cavity
/// centre this reduces to mu0 delta_v |h|^2 [1 + delta^2 + 2 sigma delta
/// sin(phi)]. sphere_quadrature_order > 0 instead integrates |.| over the
/// sphere volume for validation.
double sample_energy(const CavityParams& cavity, const DriveState& drive,
                     const MagnetParams& magnet,
                     std::array<double, 3> sample_position, double amplitude = 1.0,
                     int sphere_quadrature_order = 0);

/// sample_energy at the cavity centre.
double sample_energy_centre(const CavityParams& cavity, const DriveState& drive,
                            const MagnetParams& magnet, double amplitude = 1.0);

/// W_p / W_c for the centred sample, the ratio the perturbation theory needs.
/// The mode amplitude cancels.
double wp_over_wc(const CavityParams& cavity, const DriveState& drive,
                  const MagnetParams& magnet);

}  // namespace cmpol
