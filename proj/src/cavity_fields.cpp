#include "cmpol/cavity_fields.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cmpol/errors.hpp"
#include "cmpol/quadrature.hpp"

namespace cmpol {

namespace {

const complexd I(0.0, 1.0);

void check_inside(const CavityParams& cavity, double x, double y) {
  if (x < 0 || x > cavity.a || y < 0 || y > cavity.b)
    throw OutOfCavity("point outside the cavity cross-section");
}

bool is_square_12_21(const CavityParams& cavity) {
  const bool square = cavity.a == cavity.b;
  const bool pair = (cavity.mode1 == ModeIndex{1, 2} && cavity.mode2 == ModeIndex{2, 1}) ||
                    (cavity.mode1 == ModeIndex{2, 1} && cavity.mode2 == ModeIndex{1, 2});
  return square && pair;
}

// Energy-density bracket mu0 * [ |hx|^2 + |hy|^2 + 2 sigma Im(hy hx*) ] of a
// local field; the sigma cross term is the chiral part of the perturbation
// integrand [chi_a(|hx|^2+|hy|^2) - 2 chi_b Im(hy hx*)] with the chi's
// stripped off.
double chiral_energy_density(const cvec2& h, int sigma) {
  const double diag = std::norm(h[0]) + std::norm(h[1]);
  const double cross = std::imag(h[1] * std::conj(h[0]));
  return diag + 2.0 * sigma * cross;
}

}  // namespace

cvec2 te_mode_field(const CavityParams& cavity, ModeIndex mode, double x, double y,
                    double amplitude) {
  check_inside(cavity, x, y);
  const double k0x = mode.m * pi / cavity.a;
  const double k0y = mode.n * pi / cavity.b;
  const double scale = amplitude / (cavity.omega_c * mu0_si);
  const complexd hx = I * scale * k0y * std::sin(k0x * x) * std::cos(k0y * y);
  const complexd hy = -I * scale * k0x * std::cos(k0x * x) * std::sin(k0y * y);
  return {hx, hy};
}

cvec2 superposed_field(const CavityParams& cavity, const DriveState& drive, double x,
                       double y, double amplitude) {
  const cvec2 h1 = te_mode_field(cavity, cavity.mode1, x, y, amplitude);
  const cvec2 h2 = te_mode_field(cavity, cavity.mode2, x, y, amplitude);
  // Port-2 orientation sign: with the mode functions above, the (1,2) and
  // (2,1) centre fields are -i*A*k x̂ and +i*A*k ŷ; the -1 makes the centre
  // ratio h_y/h_x equal +delta e^{i phi}, which is how delta and phi are
  // defined at the sample.
  const complexd w = -drive.delta * std::exp(I * drive.phi);
  return {h1[0] + w * h2[0], h1[1] + w * h2[1]};
}

PolarisationEllipse polarisation_of(const cvec2& h) {
  // Circular decomposition: c± = (h_x ± i h_y)/sqrt(2) rotate CCW/CW in the
  // real locus; semi-axes are (|c+|+|c-|) and ||c+|-|c-|| up to a common scale.
  const double cp = std::abs((h[0] + I * h[1]) / std::sqrt(2.0));
  const double cm = std::abs((h[0] - I * h[1]) / std::sqrt(2.0));
  if (cp + cm == 0.0) throw DegenerateField("zero field: polarisation undefined");
  PolarisationEllipse e{};
  e.axial_ratio = std::abs(cp - cm) / (cp + cm);
  if (cp > cm)
    e.handedness = EllipseHandedness::right;
  else if (cm > cp)
    e.handedness = EllipseHandedness::left;
  else
    e.handedness = EllipseHandedness::linear;
  const double arg_p = std::arg(h[0] + I * h[1]);
  const double arg_m = std::arg(h[0] - I * h[1]);
  double ang = 0.5 * (arg_p - arg_m);
  // fold to (-pi/2, pi/2]
  while (ang > pi / 2) ang -= pi;
  while (ang <= -pi / 2) ang += pi;
  e.major_axis_angle = ang;
  return e;
}

PolarisationEllipse polarisation_at_point(const CavityParams& cavity,
                                          const DriveState& drive, double x, double y) {
  return polarisation_of(superposed_field(cavity, drive, x, y));
}

double polarisation_factor(const DriveState& drive) {
  return 1.0 + drive.delta * drive.delta +
         2.0 * drive.chirality_sign() * drive.delta * std::sin(drive.phi);
}

double cavity_energy_analytic(const CavityParams& cavity, const DriveState& drive,
                              double amplitude) {
  if (!is_square_12_21(cavity))
    throw UnsupportedModePair(
        "closed-form W_c requires a square cavity with the (1,2)/(2,1) mode pair");
  const double A2 = amplitude * amplitude;
  return 5.0 * pi * pi * (1.0 + drive.delta * drive.delta) * cavity.c * A2 /
         (2.0 * mu0_si * cavity.omega_c * cavity.omega_c);
}

double cavity_energy_numeric(const CavityParams& cavity, const DriveState& drive,
                             int quadrature_order, double amplitude) {
  if (quadrature_order < 2)
    throw std::invalid_argument("cavity_energy_numeric: quadrature_order must be >= 2");
  const GaussLegendre qx = gauss_legendre(quadrature_order, 0.0, cavity.a);
  const GaussLegendre qy = gauss_legendre(quadrature_order, 0.0, cavity.b);
  double acc = 0.0;
  for (int i = 0; i < quadrature_order; ++i) {
    for (int j = 0; j < quadrature_order; ++j) {
      const cvec2 h = superposed_field(cavity, drive, qx.nodes[i], qy.nodes[j], amplitude);
      acc += qx.weights[i] * qy.weights[j] * (std::norm(h[0]) + std::norm(h[1]));
    }
  }
  // TE_mn0 fields are z-independent.
  return 2.0 * mu0_si * acc * cavity.c;
}

double sample_energy(const CavityParams& cavity, const DriveState& drive,
                     const MagnetParams& magnet, std::array<double, 3> sample_position,
                     double amplitude, int sphere_quadrature_order) {
  const double r = magnet.sample_diameter / 2.0;
  const auto [x0, y0, z0] = sample_position;
  if (x0 - r < 0 || x0 + r > cavity.a || y0 - r < 0 || y0 + r > cavity.b ||
      z0 - r < 0 || z0 + r > cavity.c)
    throw OutOfCavity("sample sphere does not fit inside the cavity");
  const int sigma = drive.chirality_sign();
  const double dv = magnet.sample_volume();
  if (sphere_quadrature_order <= 0) {
    const cvec2 h = superposed_field(cavity, drive, x0, y0, amplitude);
    return mu0_si * dv * chiral_energy_density(h, sigma);
  }
  // Validation path: spherical quadrature (radius, polar, azimuth) of the same
  // density; the field only varies in x and y.
  const int q = sphere_quadrature_order;
  const GaussLegendre qr = gauss_legendre(q, 0.0, r);
  const GaussLegendre qt = gauss_legendre(q, 0.0, pi);
  const GaussLegendre qp = gauss_legendre(q, 0.0, two_pi);
  double acc = 0.0;
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < q; ++k) {
        const double rr = qr.nodes[i], th = qt.nodes[j], ph = qp.nodes[k];
        const double x = x0 + rr * std::sin(th) * std::cos(ph);
        const double y = y0 + rr * std::sin(th) * std::sin(ph);
        const cvec2 h = superposed_field(cavity, drive, x, y, amplitude);
        acc += qr.weights[i] * qt.weights[j] * qp.weights[k] * rr * rr * std::sin(th) *
               chiral_energy_density(h, sigma);
      }
    }
  }
  return mu0_si * acc;
}

double sample_energy_centre(const CavityParams& cavity, const DriveState& drive,
                            const MagnetParams& magnet, double amplitude) {
  return sample_energy(cavity, drive, magnet, cavity.centre(), amplitude, 0);
}

double wp_over_wc(const CavityParams& cavity, const DriveState& drive,
                  const MagnetParams& magnet) {
  return sample_energy_centre(cavity, drive, magnet) /
         cavity_energy_analytic(cavity, drive);
}

}  // namespace cmpol
