//! Adaptive Gauss-Kronrod quadrature (7-15 pair) for the quantile integrals
//! of profile-defined measures.

// Nodes and weights of the 15-point Kronrod rule with embedded 7-point Gauss
// rule on [-1, 1] (the classic QUADPACK dqk15 tables).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_41,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// One Kronrod panel over [lo, hi]. Returns (value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let fsum = f(c - dx) + f(c + dx);
        resk += WGK[i] * fsum;
        if i % 2 == 1 {
            resg += WG[i / 2] * fsum;
        }
    }
    (resk * h, ((resk - resg) * h).abs())
}

/// Integrate `f` over [a, b] (a < b) to absolute tolerance `tol`.
///
/// `breaks` lists interior points where `f` may have kinks (piecewise-linear
/// profile knots); panels never straddle them. Integrable endpoint blowups
/// are handled by depth-limited bisection, which refines dyadically toward
/// the offending endpoint.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, breaks: &[f64]) -> f64 {
    debug_assert!(a < b && tol > 0.0);
    let mut edges: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    edges.push(a);
    for &t in breaks {
        if t > a && t < b {
            edges.push(t);
        }
    }
    edges.push(b);
    edges.sort_by(|p, q| p.partial_cmp(q).unwrap());
    edges.dedup();

    let per_panel = tol / (edges.len() - 1) as f64;
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += refine(f, w[0], w[1], per_panel, 0);
    }
    total
}

fn refine<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64, depth: u32) -> f64 {
    let (v, e) = gk15(f, lo, hi);
    if e <= tol || depth >= 48 || hi - lo < 1e-15 * lo.abs().max(hi.abs()).max(1e-300) {
        return v;
    }
    let mid = 0.5 * (lo + hi);
    refine(f, lo, mid, 0.5 * tol, depth + 1) + refine(f, mid, hi, 0.5 * tol, depth + 1)
}
