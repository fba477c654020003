#pragma once

#include "g2cert/kform.hpp"

#include <array>

namespace g2cert {

/* The reference positive 3-form
 *   phi = e^127 + e^347 + e^567 + e^135 - e^146 - e^236 - e^245
 * and its companions. All registry structures carry this same phi; only the
 * Lie bracket varies. */
KForm phi_reference();
/* tau = e^12 - e^56 (the torsion 2-form of every registry entry). */
KForm tau_reference();
/* omega = e^12 + e^34 + e^56 with phi = omega ^ e^7 + rho_plus. */
KForm omega_reference();
KForm rho_plus_reference();

/* 2-forms on the 4-dimensional model of g1 = span{e1, e2, e5, e6}; local
 * coordinates (u1, u2, u3, u4) = (e1, e2, e5, e6):
 *   tau   = u^12 - u^34        omega7 = u^12 + u^34
 *   bar3  = u^24 + u^13        omega3 = u^24 - u^13
 *   bar4  = u^14 - u^23        omega4 = u^14 + u^23
 * Basis order beta = (tau, bar3, bar4, omega7, omega3, omega4); each has
 * norm sqrt(2) and they are mutually orthogonal. */
std::array<KForm, 6> beta_basis();
FramePtr model4_frame();

} // namespace g2cert
