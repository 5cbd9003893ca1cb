//! Reference values computed independently with mpmath at 50-digit working
//! precision and frozen to 12 significant digits. Regenerate by rerunning
//! the oracle script against these names; never adjust a value to make a
//! test pass.

// standard normal point values
pub const PHI_DENSITY_AT_0: f64 = 0.398942280401;
pub const PHI_DENSITY_AT_1: f64 = 0.241970724519;
pub const STD_NORMAL_CDF_AT_1: f64 = 0.841344746069;
pub const STD_NORMAL_CDF_AT_MINUS_1: f64 = 0.158655253931;
pub const PHI_INV_0_2: f64 = -0.841621233573;
pub const PHI_INV_0_25: f64 = -0.674489750196;
pub const PHI_INV_0_1: f64 = -1.28155156554;
pub const PHI_INV_0_9: f64 = 1.28155156554;
pub const PHI_INV_0_55: f64 = 0.125661346855;
pub const PHI_INV_0_0825: f64 = -1.38845019732;

// the unit symmetric interval (-1, 1) under the Gaussian
pub const MASS_OF_UNIT_SYM_INTERVAL: f64 = 0.682689492137;
pub const TWO_TAILS_BEYOND_1: f64 = 0.317310507863;
pub const PERIM_UNIT_SYM_INTERVAL: f64 = 0.483941449038;
pub const J_GAUSS_AT_MASS_UNIT: f64 = 0.35634295194;
pub const GAUSS_DEFICIT_UNIT_INTERVAL: f64 = 0.127598497098;

// Gaussian isoperimetric profile J(r) on a decimal grid
pub const J_GAUSS: [(f64, f64); 10] = [
    (0.05, 0.103135640375),
    (0.10, 0.175498331932),
    (0.15, 0.233158775254),
    (0.20, 0.279961920408),
    (0.25, 0.317776572684),
    (0.30, 0.3476926142),
    (0.35, 0.370399004399),
    (0.40, 0.386342533497),
    (0.45, 0.395804878488),
    (0.50, 0.398942280401),
];

// deficit moduli: first branch at (0.25, 0.1), second at (0.2, 0.3),
// and the jump of K across the branch seam at x = 0.3
pub const K_GAUSS_0_25_0_1: f64 = 0.0653209880991;
pub const L_GAUSS_0_25_0_1: f64 = 0.0395803258385;
pub const K_GAUSS_0_2_0_3: f64 = 0.323595859245;
pub const L_GAUSS_0_2_0_3: f64 = 0.180665915177;
pub const K_JUMP_GAUSS_0_3: f64 = 0.162646103234;

// minimizers and bounds
pub const OPT_D2_ENDPT_LO_0_3_0_2: f64 = -0.841621233573;
pub const OPT_D2_ENDPT_HI_0_3_0_2: f64 = 1.28155156554;
pub const OPT_D2_PERIM_0_3_0_2: f64 = 0.45546025234;
pub const LOWER_BOUND_GAUSS_0_3_0_4: f64 = 0.678904200809;

// Gaussian profile tail against r * sqrt(2 ln(1/r))
pub const J_GAUSS_TAIL_RATIO: [(f64, f64); 5] = [
    (1e-2, 0.878201716818),
    (1e-3, 0.905881238828),
    (1e-4, 0.922307161228),
    (1e-6, 0.941370155648),
    (1e-8, 0.952326486189),
];

// K(1/4, y) against its small-asymmetry expansion (y/2) sqrt(2 ln(2/y))
pub const GAUSS_ASYMPT_RATIO: [(f64, f64); 6] = [
    (1e-3, 0.738430740153),
    (1e-4, 0.774484623123),
    (1e-5, 0.799507494365),
    (1e-6, 0.81816334109),
    (1e-7, 0.832734897244),
    (1e-8, 0.844503955868),
];

// logistic (scale 1) and Laplace (rate 1) spot values
pub const LOGISTIC_DENSITY_AT_0: f64 = 0.25;
pub const LOGISTIC_QUANTILE_0_75: f64 = 1.09861228867;
pub const LOGISTIC_J_0_3: f64 = 0.21;
pub const LAPLACE_QUANTILE_0_25: f64 = -0.69314718056;
pub const LAPLACE_DENSITY_AT_MINUS_1: f64 = 0.183939720586;

// Gaussian quantiles recovered by integrating 1/J from 1/2
pub const BOBKOV_QUANTILE_GAUSS_0_2: f64 = -0.841621233573;
pub const BOBKOV_QUANTILE_GAUSS_0_05: f64 = -1.64485362695;
pub const BOBKOV_QUANTILE_GAUSS_0_7: f64 = 0.524400512708;
