#pragma once

#include <algorithm>
#include <cmath>

#include "swe/physics.hpp"

namespace swe {

// Input of the 1D rotated Riemann problem at an edge quadrature point.
// States are rotated: m1 is the normal momentum, m2 the tangential one.
// etal/etar are the free-surface traces; g_eff = g in Cartesian mode and
// g/sigma(gamma) at a spherical edge point.
struct RiemannInput {
  State wl, wr;
  double etal = 0.0, etar = 0.0;
  double g_eff = 9.81;
  double h_dry = 1e-8;
};

struct Fluctuation {
  Vec3 dminus{};
  Vec3 dplus{};
};

struct WaveSpeeds {
  double sl = 0.0, sstar = 0.0, sr = 0.0;
};

inline WaveSpeeds wave_speeds(const RiemannInput& in) {
  const bool wl_wet = in.wl.a >= in.h_dry;
  const bool wr_wet = in.wr.a >= in.h_dry;
  const double ul = wl_wet ? in.wl.m1 / in.wl.a : 0.0;
  const double ur = wr_wet ? in.wr.m1 / in.wr.a : 0.0;
  const double cl = wl_wet ? std::sqrt(in.g_eff * in.wl.a) : 0.0;
  const double cr = wr_wet ? std::sqrt(in.g_eff * in.wr.a) : 0.0;

  WaveSpeeds s;
  if (wl_wet && wr_wet) {
    s.sl = std::min(ul - cl, ur - cr);
    s.sr = std::max(ul + cl, ur + cr);
  } else if (wl_wet) {  // dry front on the right
    s.sl = ul - cl;
    s.sr = ul + 2.0 * cl;
  } else {  // dry front on the left
    s.sl = ur - 2.0 * cr;
    s.sr = ur + cr;
  }

  const double dl = in.wl.a * (ul - s.sl);
  const double dr = in.wr.a * (ur - s.sr);
  const double den = dr - dl;
  const double num = s.sl * dr - s.sr * dl;
  const double scale = std::abs(dr) + std::abs(dl);
  if (std::abs(den) > 1e-12 * (scale + 1e-300) && scale > 0.0)
    s.sstar = std::clamp(num / den, s.sl, s.sr);
  else
    s.sstar = 0.5 * (s.sl + s.sr);
  return s;
}

// Well-balanced path-conservative HLLC fluctuations for the 1D system with a
// linear path in the free surface. D- + D+ equals
// F(wr) - F(wl) + (0, g_eff*hbar*(etar-etal), 0) by construction.
inline Fluctuation hllc_fluctuation(const RiemannInput& in) {
  Fluctuation out{};
  if (in.wl.m1 == 0.0 && in.wr.m1 == 0.0 && in.wl.m2 == 0.0 &&
      in.wr.m2 == 0.0 && in.etal == in.etar)
    return out;  // water at rest: exact zero, not merely small

  const bool wl_wet = in.wl.a >= in.h_dry;
  const bool wr_wet = in.wr.a >= in.h_dry;
  const double ul = wl_wet ? in.wl.m1 / in.wl.a : 0.0;
  const double ur = wr_wet ? in.wr.m1 / in.wr.a : 0.0;
  const double vl = wl_wet ? in.wl.m2 / in.wl.a : 0.0;
  const double vr = wr_wet ? in.wr.m2 / in.wr.a : 0.0;

  // Non-flooding wall: a dry bottom emerged above the wet free surface acts
  // as a reflecting wall. The wet side sees its own mirror image (normal
  // momentum negated, same free surface), so no mass or momentum crosses the
  // interface and the emerged side receives nothing; in particular the eta
  // jump up the dry slope never acts as a pressure gradient.
  if (wl_wet && !wr_wet && in.etar > in.etal) {
    RiemannInput wall = in;
    wall.wr = {in.wl.a, -in.wl.m1, in.wl.m2};
    wall.etar = in.etal;
    out = hllc_fluctuation(wall);
    out.dplus = {0.0, 0.0, 0.0};
    return out;
  }
  if (wr_wet && !wl_wet && in.etal > in.etar) {
    RiemannInput wall = in;
    wall.wl = {in.wr.a, -in.wr.m1, in.wr.m2};
    wall.etal = in.etar;
    out = hllc_fluctuation(wall);
    out.dminus = {0.0, 0.0, 0.0};
    return out;
  }

  const double deta = in.etar - in.etal;

  const double hbar = 0.5 * (in.wl.a + in.wr.a);
  const double snc = in.g_eff * hbar * deta;

  const double f1l = in.wl.m1, f1r = in.wr.m1;
  const double f2l = in.wl.m1 * ul, f2r = in.wr.m1 * ur;
  const double f3l = in.wl.m1 * vl, f3r = in.wr.m1 * vr;

  const double dphi1 = f1r - f1l;
  const double dphi2 = f2r - f2l + snc;
  const double dphi3 = f3r - f3l;
  const double dm = in.wr.m1 - in.wl.m1;

  const WaveSpeeds s = wave_speeds(in);

  double dminus1, dminus2;
  if (s.sl >= 0.0) {
    dminus1 = 0.0;
    dminus2 = 0.0;
  } else if (s.sr <= 0.0) {
    dminus1 = dphi1;
    dminus2 = dphi2;
  } else {
    // HLL with the well-balanced jump (eta replaces the water column).
    const double inv = 1.0 / (s.sr - s.sl);
    dminus1 = s.sl * (s.sr * deta - dphi1) * inv;
    dminus2 = s.sl * (s.sr * dm - dphi2) * inv;
  }
  out.dminus[0] = dminus1;
  out.dminus[1] = dminus2;
  out.dplus[0] = dphi1 - dminus1;
  out.dplus[1] = dphi2 - dminus2;

  // Tangential momentum: pure transport at the contact. The interface mass
  // flux is upwinded across the contact wave. The supersonic cases are
  // written as structural zeros so they hold exactly regardless of
  // floating-point contraction.
  if (s.sl >= 0.0) {
    out.dminus[2] = 0.0;
    out.dplus[2] = dphi3;
  } else if (s.sr <= 0.0) {
    out.dminus[2] = dphi3;
    out.dplus[2] = 0.0;
  } else {
    const double mass_flux = f1l + dminus1;
    const double v_up =
        s.sstar > 0.0 ? vl : (s.sstar < 0.0 ? vr : 0.5 * (vl + vr));
    const double f3_hat = mass_flux * v_up;
    out.dminus[2] = f3_hat - f3l;
    out.dplus[2] = dphi3 - out.dminus[2];
  }
  return out;
}

}  // namespace swe
