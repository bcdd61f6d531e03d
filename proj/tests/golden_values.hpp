// Frozen high-precision reference values for the regression tests.
// Generated by tests/gen_golden.py; do not edit by hand.
#pragma once

namespace golden {

inline constexpr double kPois01P0 = 0.90483741803595957;
inline constexpr double kPois01P1 = 0.090483741803595957;
inline constexpr double kPois01P2 = 0.0045241870901797979;
inline constexpr double kPois05P1 = 0.30326532985631671;
inline constexpr double kPois05P2 = 0.075816332464079178;
inline constexpr double kPois01Tail10 = 2.2858449307904159e-19;
inline constexpr double kEntropy0015 = 0.11236071009937673;

inline constexpr double kY11At20Db = 0.010000540007290000;
inline constexpr double kT11At20Db = 0.00015027000364500000;

inline constexpr double kS_oo = 9.0000000000000000e-12;
inline constexpr double kS_ox = 2.9859409200999582e-8;
inline constexpr double kS_oy = 1.4632028756267848e-7;
inline constexpr double kS_xo = 2.9859409200999582e-8;
inline constexpr double kS_xx = 9.9064924203637609e-5;
inline constexpr double kS_xy = 0.00048544859341577183;
inline constexpr double kS_yo = 1.4632028756267848e-7;
inline constexpr double kS_yx = 0.00048544859341577183;
inline constexpr double kS_yy = 0.0023788473947138803;
inline constexpr double kT_oo = 4.5000000000000000e-12;
inline constexpr double kT_ox = 1.4929704600499791e-8;
inline constexpr double kT_oy = 7.3160143781339240e-8;
inline constexpr double kT_xo = 1.4929704600499791e-8;
inline constexpr double kT_xx = 1.5146450185091942e-6;
inline constexpr double kT_xy = 7.3657595400621812e-6;
inline constexpr double kT_yo = 7.3160143781339240e-8;
inline constexpr double kT_yx = 7.3657595400621812e-6;
inline constexpr double kT_yy = 3.5817715609135969e-5;

inline constexpr double kTildeS_xx = 9.9010895750763364e-5;
inline constexpr double kTildeS_xy = 0.00048529809163671075;
inline constexpr double kTildeS_yx = 0.00048529809163671075;
inline constexpr double kTildeS_yy = 0.0023786699025437058;
inline constexpr double kTildeT_xx = 1.4876307920720714e-6;
inline constexpr double kTildeT_xy = 7.2905086505316412e-6;
inline constexpr double kTildeT_yx = 7.2905086505316412e-6;
inline constexpr double kTildeT_yy = 3.5728969524048721e-5;

inline constexpr double kS11True = 0.010000540007290000;
inline constexpr double kE11True = 0.015026188939343184;
inline constexpr double kS11B123 = 0.0092971194080348449;
inline constexpr double kS11B124 = 0.0086506274727494230;
inline constexpr double kS11B134 = 0.0086506274727494230;
inline constexpr double kS11B234 = 0.0054181677963223134;
inline constexpr double kS11B14 = 0.0086506274727494230;
inline constexpr double kS11BAlpha = 0.0057352511407517927;
inline constexpr double kE11Simple = 0.019543648659503333;

inline constexpr double kCopS11 = 0.0094587423918562004;
inline constexpr double kCopS12 = 0.024728527401115853;
inline constexpr double kCopS21 = 0.024728527401115853;
inline constexpr double kCopS22 = 0.064649193528542192;
inline constexpr double kCopT11 = 0.00014213387128253447;
inline constexpr double kCopT12 = 0.00037139616809704170;
inline constexpr double kCopT21 = 0.00037139616809704170;
inline constexpr double kCopT22 = 0.00097045886553758904;

inline constexpr double kS11Exact = 0.0093641831157326821;
inline constexpr double kT11Exact = 0.00017915689418940257;
inline constexpr double kE11Exact = 0.019132143399503011;

inline constexpr double kRExact = 0.00043263134404288887;
inline constexpr double kR123 = 0.00042531262781303407;
inline constexpr double kR14 = 0.00036761028435848531;
inline constexpr double kRAlpha = 0.00010952323202276714;
inline constexpr double kRAsymptotic = 0.00050525908557820077;

inline constexpr double kOptMu2_exact = 0.52000000000000000;
inline constexpr double kOptR_exact = 0.00043395915378075091;
inline constexpr double kOptMu2_123 = 0.52000000000000000;
inline constexpr double kOptR_123 = 0.00042685625727056105;
inline constexpr double kOptMu2_14 = 0.47000000000000000;
inline constexpr double kOptR_14 = 0.00037008577563020347;
inline constexpr double kOptMu2_alpha = 0.35000000000000000;
inline constexpr double kOptR_alpha = 0.00026269470951052808;

inline constexpr double kAsymS11B123 = 0.018014838243378981;
inline constexpr double kAsymS11B124 = 0.016549732523322332;
inline constexpr double kAsymS11B134 = 0.016166807164671163;
inline constexpr double kAsymS11B234 = 0.0079255874893525135;
inline constexpr double kAsymS11B14 = 0.015593443420791994;
inline constexpr double kAsymS11BAlpha = -0.00047293793975777166;
inline constexpr double kAsymS11Exact = 0.018264347785162607;
inline constexpr double kAsymT11Exact = 0.00036485958235317892;
inline constexpr double kAsymS11True = 0.019953350963113678;
inline constexpr double kAsymE11True = 0.015017690738348666;
inline constexpr double kAsymRExact = 0.00080703258658012797;

}  // namespace golden
