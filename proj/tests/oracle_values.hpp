#pragma once

// Values frozen from tests/oracles/generate.py (mpmath at 30 digits, with
// no code shared with the library).

namespace oracle {

inline constexpr double nu_ref = 1.27087548969429242591938;
inline constexpr double alpha_ref = 2.40249869927123998;
inline constexpr double rg_at_nu_4_5 = 0.923076923076923077;
inline constexpr double rg_at_nu_9_7 = 1.88383045525902669;
inline constexpr double omega0 = 0.494150954932238735;
inline constexpr double omega1 = 0.146874686093402291;

// 87Rb, n0 = 50 / 0.7 um, xi = 0.7 um.
inline constexpr double rb87_mass = 1.443160648e-25;
inline constexpr double rb87_g11 = 2.20175808216878923e-39;
inline constexpr double rb87_sound_speed = 0.00104391092511473;
inline constexpr double rb87_mu = 1.57268434440627802e-31;

inline constexpr double norm_quad[3] = {0.911293153034382691, 1.20467811038286073,
                                        0.435805024939694844};
inline constexpr double raw_overlap_02 = -0.255075274713307286;

inline constexpr double hyp_alpha_b1 = 0.0482157978647881766;  // 2F1(a, 2(1+a); 1+a; -1)
inline constexpr double hyp_15_05_25_03 = 1.10806255105693199;
inline constexpr double hyp_13_46_23_m1 = 0.199453455454267686;
inline constexpr double gamma_3_7 = 4.17065178379660403;
inline constexpr double gamma_2_3 = 1.16671190519816022;
inline constexpr double atanh_half = 0.549306144334054846;

inline constexpr double k_res0 = 0.339750621379794165;
inline constexpr double k_res1 = 0.103578646281633900;
inline constexpr double im_g0_closed_09 = -0.0651965728349949269;
inline constexpr double im_g1_closed_07 = 0.0876154931805786656;
inline constexpr double abs_g0_at_kres0 = 0.0396768065908115779;
inline constexpr double abs_g1_at_kres1 = 0.0210049245799058155;
inline constexpr double u_09_03_re = 0.476042771323091503;
inline constexpr double u_09_03_im = 0.208476374713104047;
inline constexpr double v_09_03_re = -0.0317278538698891552;
inline constexpr double v_09_03_im = -0.120234708289439944;
inline constexpr double g01_quad_09 = 0.0168601875633473026;
inline constexpr double g12_quad_07 = -0.00398175312262298639;
inline constexpr double g00_quad_09_im = 0.0252589606194531164;

inline constexpr double gamma0 = 0.00145149415984563466;
inline constexpr double gamma1 = 0.000437692846327112031;

inline constexpr double im_chi_res_2g0 = 0.0307721632795752459;
inline constexpr double im_chi_res_02g0 = 0.387554622906467595;
inline constexpr double vg_res_2g0 = 0.0307015629439313096;

// Lindblad steady state at Delta_p = 0.3 gamma0, Omega_c = 2 gamma0,
// Omega_p = 0.01 Omega_c, control on resonance.
inline constexpr double lindblad_rho21_re = 0.00263691568566;
inline constexpr double lindblad_rho21_im = 0.00205241116987;
inline constexpr double lindblad_rho31_re = 0.0097627853054;
inline constexpr double lindblad_rho31_im = 0.00193418119379;

inline constexpr double pt_e0 = -0.517668112277470376;
inline constexpr double dip_half_density_x = 0.881373587019543025;

}  // namespace oracle
