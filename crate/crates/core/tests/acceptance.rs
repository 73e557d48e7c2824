//! Acceptance criteria, each checked against oracles written out here rather
//! than the library's own closed forms. Prints one line per criterion and
//! exits non-zero if any criterion fails.

use bmjet::connection::cartan_connection;
use bmjet::curvature::{curvatures, ricci_scalar, s_raised_c_contraction, s_raised_divergence, torsions};
use bmjet::fieldtheory::{conservation_residuals, einstein_blocks, em_form, stress_asymmetry};
use bmjet::harness::config::Sampling;
use bmjet::harness::output::suite_json;
use bmjet::harness::sampling::PointSampler;
use bmjet::harness::{parse_config, run_verify};
use bmjet::metric::{f_squared_jet, g_scalars, metric_jet, metric_pair};
use bmjet::{JetPoint, QuarticTensor, TimeMetric};

type M4 = [[f64; 4]; 4];

fn bm() -> QuarticTensor {
    QuarticTensor::berwald_moor()
}

fn d(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

fn root_g(y: &[f64; 4]) -> f64 {
    (y[0] * y[1] * y[2] * y[3]).sqrt()
}

/// Worst entrywise relative error; entries expected to be zero are measured
/// against the largest expected magnitude.
fn rel_err(got: &[f64], want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    got.iter().zip(want).fold(0.0f64, |m, (g, w)| {
        let e = (g - w).abs();
        let den = if *w != 0.0 { w.abs() } else { scale };
        let r = if e == 0.0 { 0.0 } else if den > 0.0 { e / den } else { f64::INFINITY };
        if r.is_nan() {
            f64::INFINITY
        } else {
            m.max(r)
        }
    })
}

fn abs_err(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).fold(0.0f64, |m, (g, w)| {
        let e = (g - w).abs();
        if e.is_nan() {
            f64::INFINITY
        } else {
            m.max(e)
        }
    })
}

fn flat2(m: &M4) -> Vec<f64> {
    m.iter().flatten().copied().collect()
}

fn flat3(t: &[[[f64; 4]; 4]; 4]) -> Vec<f64> {
    t.iter().flatten().flatten().copied().collect()
}

fn flat4(t: &[[[[f64; 4]; 4]; 4]; 4]) -> Vec<f64> {
    t.iter().flatten().flatten().flatten().copied().collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn points(n: usize, stream: u64) -> Vec<JetPoint> {
    PointSampler::with_stream(&Sampling::default(), 1000 + stream).points(n)
}

/// h, h', h'' of the three families, differentiated by hand.
fn h_derivs(tm: &TimeMetric, t: f64) -> (f64, f64, f64) {
    match *tm {
        TimeMetric::Constant { c } => (c, 0.0, 0.0),
        TimeMetric::Exponential { c, lambda } => {
            let h = c * (lambda * t).exp();
            (h, lambda * h, lambda * lambda * h)
        }
        TimeMetric::Power { a } => {
            let u = 1.0 + t * t;
            let h = u.powf(a);
            let dh = 2.0 * a * t * u.powf(a - 1.0);
            let d2h = 2.0 * a * u.powf(a - 1.0) + 4.0 * a * (a - 1.0) * t * t * u.powf(a - 2.0);
            (h, dh, d2h)
        }
    }
}

/// κ = h'/(2h) and κ' = h''/(2h) − h'²/(2h²).
fn kappa(tm: &TimeMetric, t: f64) -> (f64, f64) {
    let (h, dh, d2h) = h_derivs(tm, t);
    (dh / (2.0 * h), d2h / (2.0 * h) - dh * dh / (2.0 * h * h))
}

fn families() -> [(&'static str, TimeMetric); 3] {
    [
        ("constant", TimeMetric::Constant { c: 2.0 }),
        ("exponential", TimeMetric::Exponential { c: 1.5, lambda: -0.8 }),
        ("power", TimeMetric::Power { a: 1.5 }),
    ]
}

// ---- Berwald-Moór oracles ----

fn g_lo_oracle(y: &[f64; 4]) -> M4 {
    let r = root_g(y);
    std::array::from_fn(|i| std::array::from_fn(|j| (1.0 - 2.0 * d(i, j)) * r / (8.0 * y[i] * y[j])))
}

fn g_up_oracle(y: &[f64; 4]) -> M4 {
    let r = root_g(y);
    std::array::from_fn(|i| std::array::from_fn(|j| 2.0 * (1.0 - 2.0 * d(i, j)) * y[i] * y[j] / r))
}

/// The A table by equality pattern of (i, j, k): all equal −3/8, all
/// distinct −1/8, exactly two equal 1/8.
fn a_entry(i: usize, j: usize, k: usize) -> f64 {
    match (i == j, i == k, j == k) {
        (true, true, _) => -3.0 / 8.0,
        (false, false, false) => -1.0 / 8.0,
        _ => 1.0 / 8.0,
    }
}

fn c_oracle(y: &[f64; 4]) -> [[[f64; 4]; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| a_entry(i, j, k) * y[i] / (y[j] * y[k]))))
}

/// S^l_{ijk} from the ten-case table, written directly from its conditions.
fn s_oracle(y: &[f64; 4]) -> [[[[f64; 4]; 4]; 4]; 4] {
    std::array::from_fn(|l| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                std::array::from_fn(|k| {
                    let yi2 = y[i] * y[i];
                    if j == k {
                        0.0
                    } else if i != j && i != k {
                        if l == j {
                            1.0 / (16.0 * y[i] * y[k])
                        } else if l == k {
                            -1.0 / (16.0 * y[i] * y[j])
                        } else {
                            0.0
                        }
                    } else if i == j {
                        if l == k {
                            1.0 / (8.0 * yi2)
                        } else if l == i {
                            0.0
                        } else {
                            -y[l] / (16.0 * yi2 * y[k])
                        }
                    } else if l == j {
                        -1.0 / (8.0 * yi2)
                    } else if l == i {
                        0.0
                    } else {
                        y[l] / (16.0 * yi2 * y[j])
                    }
                })
            })
        })
    })
}

/// The published vertical Ricci table: −1/(8yⁱyʲ) off the diagonal, 3/(4(yⁱ)²) on it.
fn ricci_published(y: &[f64; 4]) -> M4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { 3.0 / (4.0 * y[i] * y[i]) } else { -1.0 / (8.0 * y[i] * y[j]) })
    })
}

/// Contraction of the ten-case table carried out by hand: (4δᵢⱼ − 1)/(8yⁱyʲ).
fn ricci_from_table(y: &[f64; 4]) -> M4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (4.0 * d(i, j) - 1.0) / (8.0 * y[i] * y[j])))
}

fn raised_published(y: &[f64; 4]) -> M4 {
    let r = root_g(y);
    std::array::from_fn(|m| std::array::from_fn(|i| (5.0 - 14.0 * d(m, i)) / (4.0 * r) * y[m] / y[i]))
}

fn matmul(a: &M4, b: &M4) -> M4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

fn det4(m: &M4) -> f64 {
    // Laplace expansion along the first row
    let minor = |c: usize| -> f64 {
        let cols: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        let e = |r: usize, k: usize| m[r][cols[k]];
        e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
            + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
    };
    (0..4).map(|c| if c % 2 == 0 { 1.0 } else { -1.0 } * m[0][c] * minor(c)).sum()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1() -> Outcome {
    let g = bm();
    let (mut rel, mut ident) = (0.0f64, 0.0f64);
    for p in points(1000, 1) {
        let mp = metric_pair(&g, &p).expect("metric");
        rel = rel
            .max(rel_err(&flat2(&mp.g_lo), &flat2(&g_lo_oracle(&p.y))))
            .max(rel_err(&flat2(&mp.g_up), &flat2(&g_up_oracle(&p.y))));
        let prod = matmul(&mp.g_lo, &mp.g_up);
        let id: M4 = std::array::from_fn(|i| std::array::from_fn(|j| d(i, j)));
        ident = ident.max(abs_err(&flat2(&prod), &flat2(&id)));
    }
    outcome(
        rel <= 1e-10 && ident <= 1e-10,
        format!("1000 points: closed-form rel {rel:.2e} (<= 1e-10), |g g^-1 - I| {ident:.2e} (<= 1e-10)"),
    )
}

fn criterion_2() -> Outcome {
    let g = bm();
    let mut worst = 0.0f64;
    for p in points(1000, 2) {
        let y = p.y;
        let s = g_scalars(&g, &y).expect("scalars");
        let big_g = y[0] * y[1] * y[2] * y[3];
        let e1: f64 = (0..4).map(|i| s.gi111[i] * y[i]).sum();
        let e2: Vec<f64> = (0..4).map(|i| (0..4).map(|j| s.gij11[i][j] * y[j]).sum()).collect();
        let e3: Vec<f64> =
            (0..16).map(|ij| (0..4).map(|k| s.gijk1[ij / 4][ij % 4][k] * y[k]).sum()).collect();
        worst = worst
            .max(rel_err(&[e1, s.g1111], &[4.0 * big_g, big_g]))
            .max(rel_err(&e2, &s.gi111.map(|v| 3.0 * v)))
            .max(rel_err(&e3, &flat2(&s.gij11).iter().map(|v| 2.0 * v).collect::<Vec<_>>()))
            .max(rel_err(&[s.det_gij11, det4(&s.gij11)], &[-3.0 * big_g * big_g; 2]))
            .max(rel_err(&[s.g_script], &[2.0 * big_g / 3.0]))
            .max(rel_err(&s.gj_up, &y.map(|v| v / 3.0)));
    }
    outcome(
        worst <= 1e-12,
        format!("1000 points: Euler relations, det = -3G^2, script G = 2G/3, G^j = y/3: worst rel {worst:.2e} (<= 1e-12)"),
    )
}

fn criterion_3() -> Outcome {
    let g = bm();
    let tm = TimeMetric::Exponential { c: 1.3, lambda: 0.7 };
    let (mut oracle, mut sym, mut contr, mut trace, mut gk, mut l) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in points(1000, 3) {
        let cc = cartan_connection(&g, &tm, &p).expect("cartan");
        let (k, _) = kappa(&tm, p.t);
        oracle = oracle.max(rel_err(&flat3(&cc.c), &flat3(&c_oracle(&p.y))));
        for i in 0..4 {
            for j in 0..4 {
                for m in 0..4 {
                    sym = sym.max((cc.c[i][j][m] - cc.c[i][m][j]).abs());
                }
                contr = contr.max((0..4).map(|m| cc.c[i][j][m] * p.y[m]).sum::<f64>().abs());
                trace = trace.max((0..4).map(|m| cc.c[m][j][m]).sum::<f64>().abs());
            }
        }
        gk = gk.max(max_abs(&flat2(&cc.gk)));
        let want: Vec<f64> = flat3(&cc.c).iter().map(|v| k / 3.0 * v).collect();
        l = l.max(rel_err(&flat3(&cc.l), &want));
    }
    let unit = cartan_connection(&g, &tm, &JetPoint::at(0.0, [1.0; 4]).unwrap()).unwrap();
    let mut values: Vec<f64> = flat3(&unit.c);
    values.sort_by(f64::total_cmp);
    values.dedup();
    let table_ok = values == [-3.0 / 8.0, -1.0 / 8.0, 1.0 / 8.0];
    let pass = oracle <= 1e-9 && table_ok && sym == 0.0 && contr <= 1e-10 && trace <= 1e-10 && gk <= 1e-10 && l <= 1e-12;
    outcome(
        pass,
        format!(
            "1000 points: C vs A-table rel {oracle:.2e}, A values at unit point {values:?}, symmetry {sym:.1e} (exact), \
             y-contraction {contr:.2e}, trace {trace:.2e} (<= 1e-10), max|G^k_j1| {gk:.1e} (<= 1e-10), L vs kC/3 rel {l:.2e}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let g = bm();
    let mut parts = Vec::new();
    let mut pass = true;
    for (idx, (name, tm)) in families().into_iter().enumerate() {
        let mut worst = 0.0f64;
        let mut constant_residual = 0.0f64;
        for p in points(1000, 40 + idx as u64) {
            let ts = torsions(&g, &tm, &p).expect("torsions");
            let (k, dk) = kappa(&tm, p.t);
            let c = c_oracle(&p.y);
            let p_mixed: Vec<f64> = flat3(&c).iter().map(|v| -k / 3.0 * v).collect();
            let r_time: M4 = std::array::from_fn(|i| std::array::from_fn(|j| (dk - k * k) / 3.0 * d(i, j)));
            worst = worst
                .max(rel_err(&flat3(&ts.p_mixed), &p_mixed))
                .max(rel_err(&flat3(&ts.p_vert), &flat3(&c)))
                .max(rel_err(&flat2(&ts.r_time), &flat2(&r_time)));
            if name == "constant" {
                constant_residual = constant_residual.max(max_abs(&flat3(&ts.p_mixed))).max(max_abs(&flat2(&ts.r_time)));
            }
        }
        pass &= worst <= 1e-9 && constant_residual == 0.0;
        parts.push(format!("{name} rel {worst:.2e}"));
        if name == "constant" {
            parts.push(format!("constant-family P_mixed, R_time max {constant_residual:.1e}"));
        }
    }
    outcome(pass, format!("1000 points per family: {} (<= 1e-9)", parts.join(", ")))
}

fn criterion_5() -> Outcome {
    let g = bm();
    let tm = TimeMetric::Power { a: 0.8 };
    let (mut oracle, mut anti, mut rp) = (0.0f64, 0.0f64, 0.0f64);
    for p in points(500, 5) {
        let cs = curvatures(&g, &tm, &p).expect("curvatures");
        let want = flat4(&s_oracle(&p.y));
        let scale = max_abs(&want);
        oracle = oracle.max(abs_err(&flat4(&cs.s), &want) / scale);
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        anti = anti.max((cs.s[l][i][j][k] + cs.s[l][i][k][j]).abs() / scale);
                    }
                }
            }
        }
        let (kp, _) = kappa(&tm, p.t);
        let s = flat4(&cs.s);
        let r_want: Vec<f64> = s.iter().map(|v| kp * kp / 9.0 * v).collect();
        let p_want: Vec<f64> = s.iter().map(|v| kp / 3.0 * v).collect();
        let r_scale = max_abs(&r_want).max(f64::MIN_POSITIVE);
        let p_scale = max_abs(&p_want).max(f64::MIN_POSITIVE);
        rp = rp
            .max(abs_err(&flat4(&cs.r), &r_want) / r_scale)
            .max(abs_err(&flat4(&cs.p), &p_want) / p_scale);
    }
    outcome(
        oracle <= 1e-9 && anti <= 1e-9 && rp <= 1e-9,
        format!(
            "500 points, 256 entries each: |S - table|/max|S| {oracle:.2e} (<= 1e-9), antisymmetry {anti:.2e}, \
             R = k^2 S/9 and P = k S/3 {rp:.2e}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let g = bm();
    let tm = TimeMetric::Exponential { c: 1.0, lambda: 1.0 };
    let (mut table, mut true_table, mut raised, mut contraction, mut div, mut sc) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in points(1000, 6) {
        let rs = ricci_scalar(&g, &tm, &p).expect("ricci");
        table = table.max(rel_err(&flat2(&rs.s_ricci), &flat2(&ricci_published(&p.y))));
        true_table = true_table.max(rel_err(&flat2(&rs.s_ricci), &flat2(&ricci_from_table(&p.y))));
        raised = raised.max(rel_err(&flat2(&rs.s_raised), &flat2(&raised_published(&p.y))));
        let c = cartan_connection(&g, &tm, &p).unwrap().c;
        contraction = contraction.max(max_abs(&s_raised_c_contraction(&rs.s_raised, &c)));
        let r = root_g(&p.y);
        let dv = s_raised_divergence(&g, &tm, &p).expect("divergence");
        div = div.max(rel_err(&dv, &p.y.map(|v| 3.0 / (r * v))));
        let (h, _, _) = h_derivs(&tm, p.t);
        let (k, _) = kappa(&tm, p.t);
        sc = sc.max(rel_err(&[rs.sc], &[-(9.0 * h + k * k) / r]));
    }
    let spot = ricci_scalar(&g, &TimeMetric::Constant { c: 1.0 }, &JetPoint::at(0.0, [1.0; 4]).unwrap())
        .unwrap()
        .sc;
    let spot_ok = ((spot + 9.0) / 9.0).abs() <= 1e-9;
    let pass = table <= 1e-9 && raised <= 1e-9 && contraction <= 1e-10 && div <= 1e-9 && sc <= 1e-9 && spot_ok;
    outcome(
        pass,
        format!(
            "1000 points: published Ricci table rel {table:.2e}, raised form rel {raised:.2e}, \
             S-C contraction {contraction:.2e}, divergence vs 3/(sqrt(G) y) rel {div:.2e}, \
             Sc rel {sc:.2e} (all <= 1e-9); Sc at unit point = {spot} (want -9). \
             Contracting the ten-case table gives (4d-1)/(8yy), matched to rel {true_table:.2e}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let g = bm();
    let tm = TimeMetric::Exponential { c: 0.9, lambda: 0.6 };
    let big_k = 1.7;
    let (mut blocks, mut zero, mut sym, mut raised) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in points(1000, 7) {
        let b = einstein_blocks(&g, &tm, &p, big_k).expect("einstein");
        let (h, _, _) = h_derivs(&tm, p.t);
        let (k, _) = kappa(&tm, p.t);
        let xi = (9.0 * h + k * k) / (2.0 * big_k);
        let r = root_g(&p.y);
        let s = ricci_from_table(&p.y);
        let gl = g_lo_oracle(&p.y);
        let blk = |a: f64, b: f64| -> M4 { std::array::from_fn(|i| std::array::from_fn(|j| a * s[i][j] + b * gl[i][j])) };
        let t_ij = blk(k * k / (9.0 * big_k), xi / r);
        let t_yy = blk(1.0 / big_k, xi / (r * h));
        let mixed = blk(k / (3.0 * big_k), 0.0);
        blocks = blocks
            .max(rel_err(&[b.xi11, b.t_11], &[xi, xi * h / r]))
            .max(rel_err(&flat2(&b.t_ij), &flat2(&t_ij)))
            .max(rel_err(&flat2(&b.t_yy), &flat2(&t_yy)))
            .max(rel_err(&flat2(&b.t_i_yj), &flat2(&mixed)))
            .max(rel_err(&flat2(&b.t_yi_j), &flat2(&mixed)));
        zero = zero.max(b.zero_blocks.max_abs());
        sym = sym.max(stress_asymmetry(&b));

        let up = g_up_oracle(&p.y);
        let hs = |m: &M4, f: f64| -> Vec<f64> { flat2(m).iter().map(|v| f * v).collect() };
        raised = raised
            .max(rel_err(&[b.raised.t1_1], &[b.t_11 / h]))
            .max(rel_err(&flat2(&b.raised.t_mi), &flat2(&matmul(&up, &b.t_ij))))
            .max(rel_err(&flat2(&b.raised.t_ym_i), &hs(&matmul(&up, &b.t_yi_j), h)))
            .max(rel_err(&flat2(&b.raised.t_m_yi), &flat2(&matmul(&up, &b.t_i_yj))))
            .max(rel_err(&flat2(&b.raised.t_ym_yi), &hs(&matmul(&up, &b.t_yy), h)));
    }
    outcome(
        blocks <= 1e-9 && zero <= 1e-12 && sym <= 1e-10 && raised <= 1e-9,
        format!(
            "1000 points, K = 1.7: blocks rel {blocks:.2e}, zero blocks {zero:.1e} (<= 1e-12), \
             symmetry {sym:.2e} (<= 1e-10), raised identities rel {raised:.2e}"
        ),
    )
}

/// Closed right-hand sides of the three conservation laws as published.
fn conservation_rhs(tm: &TimeMetric, p: &JetPoint, big_k: f64) -> (f64, [f64; 4], [f64; 4]) {
    let (h, dh, d2h) = h_derivs(tm, p.t);
    let (k, _) = kappa(tm, p.t);
    let xi = (9.0 * h + k * k) / (2.0 * big_k);
    let r = root_g(&p.y);
    let t1 = dh * (2.0 * d2h - 3.0 * dh * dh / h) / (8.0 * big_k * h * h * r);
    (t1, p.y.map(|v| k * xi / (18.0 * r * v)), p.y.map(|v| xi / (6.0 * r * v)))
}

fn criterion_8() -> Outcome {
    let g = bm();
    let mut sampler = PointSampler::with_stream(&Sampling::default(), 1008);
    let (mut t1, mut ti, mut tyi) = (0.0f64, 0.0f64, 0.0f64);
    let mut never_zero = true;
    for _ in 0..200 {
        let p = sampler.next_point();
        let big_k = 0.5 + 1.5 * sampler.unit();
        let u = sampler.unit();
        let tm = match (3.0 * sampler.unit()) as usize {
            0 => TimeMetric::Constant { c: 0.5 + 1.5 * u },
            1 => TimeMetric::Exponential { c: 0.5 + 1.5 * u, lambda: -1.0 + 2.0 * sampler.unit() },
            _ => TimeMetric::Power { a: -1.0 + 3.0 * u },
        };
        let got = conservation_residuals(&g, &tm, &p, big_k).expect("conservation");
        let (w1, wi, wyi) = conservation_rhs(&tm, &p, big_k);
        // 𝒯₁ is a difference of two terms whose h-parts cancel exactly; its
        // rounding error scales with those terms, not with 𝒯₁ itself
        let (h, dh, _) = h_derivs(&tm, p.t);
        let (k, dk) = kappa(&tm, p.t);
        let xi = (9.0 * h + k * k) / (2.0 * big_k);
        let dxi = (9.0 * dh + 2.0 * k * dk) / (2.0 * big_k);
        let scale = w1.abs().max((dxi.abs() + 2.0 * (k * xi).abs()) / root_g(&p.y));
        let e1 = (got.t1 - w1).abs();
        t1 = t1.max(if e1 == 0.0 { 0.0 } else { e1 / scale });
        ti = ti.max(rel_err(&got.ti, &wi));
        tyi = tyi.max(rel_err(&got.tyi, &wyi));
        let norm: f64 = std::iter::once(got.t1).chain(got.ti).chain(got.tyi).map(|v| v * v).sum();
        never_zero &= norm > 0.0;
    }

    let tm = TimeMetric::Exponential { c: 1.0, lambda: 1.0 };
    let logs: Vec<(f64, f64)> = [10.0f64, 100.0, 1000.0]
        .iter()
        .map(|&s| {
            let r = conservation_residuals(&g, &tm, &JetPoint::at(0.0, [s; 4]).unwrap(), 1.0).unwrap();
            let mag = std::iter::once(r.t1).chain(r.ti).chain(r.tyi).fold(0.0f64, |m, v| m.max(v.abs()));
            (s.ln(), mag.ln())
        })
        .collect();
    let mx = logs.iter().map(|l| l.0).sum::<f64>() / 3.0;
    let my = logs.iter().map(|l| l.1).sum::<f64>() / 3.0;
    let slope = logs.iter().map(|l| (l.0 - mx) * (l.1 - my)).sum::<f64>() / logs.iter().map(|l| (l.0 - mx).powi(2)).sum::<f64>();
    let decay_ok = ((slope + 2.0) / 2.0).abs() <= 0.01;

    let pass = t1 <= 1e-8 && ti <= 1e-8 && tyi <= 1e-8 && never_zero && decay_ok;
    outcome(
        pass,
        format!(
            "200 draws: T1 rel {t1:.2e}, Ti rel {ti:.2e}, Tyi rel {tyi:.2e} (<= 1e-8); never zero: {never_zero}; \
             decay exponent {slope:.4} (want -2 within 1%)"
        ),
    )
}

fn criterion_9() -> Outcome {
    let g = bm();
    let mut worst = 0.0f64;
    for (idx, (_, tm)) in families().into_iter().enumerate() {
        for p in points(1000, 90 + idx as u64) {
            worst = worst.max(max_abs(&flat2(&em_form(&g, &tm, &p).expect("em").f)));
        }
    }
    outcome(worst <= 1e-10, format!("3 x 1000 points: max |F| {worst:.2e} (<= 1e-10)"))
}

fn criterion_10() -> Outcome {
    let g = bm();
    let tm = TimeMetric::Power { a: 0.7 };
    let mut worst = 0.0f64;
    for p in points(100, 10) {
        let y = p.y;
        let f2 = |y: &[f64; 4]| root_g(y) / h_derivs(&tm, p.t).0;
        let jet = f_squared_jet(&g, &tm, &p).expect("F^2");
        let mj = metric_jet(&g, &y);
        for k in 0..4 {
            let step = 1e-5 * y[k];
            let shift = |s: f64| {
                let mut z = y;
                z[k] += s;
                z
            };
            let (yp, ym) = (shift(step), shift(-step));
            let fd_grad = (f2(&yp) - f2(&ym)) / (2.0 * step);
            worst = worst.max(rel_err(&[jet.grad[k]], &[fd_grad]));
            let (jp, jm) = (
                f_squared_jet(&g, &tm, &JetPoint::at(p.t, yp).unwrap()).unwrap(),
                f_squared_jet(&g, &tm, &JetPoint::at(p.t, ym).unwrap()).unwrap(),
            );
            let fd_hess: Vec<f64> = (0..4).map(|l| (jp.grad[l] - jm.grad[l]) / (2.0 * step)).collect();
            let hess: Vec<f64> = (0..4).map(|l| jet.hess(k, l)).collect();
            worst = worst.max(rel_err(&hess, &fd_hess));

            let (gp, gm) = (g_lo_oracle(&yp), g_lo_oracle(&ym));
            let (mp, mm) = (metric_jet(&g, &yp), metric_jet(&g, &ym));
            for i in 0..4 {
                for j in 0..4 {
                    let fd = (gp[i][j] - gm[i][j]) / (2.0 * step);
                    worst = worst.max(rel_err(&[mj.g_lo[i][j].grad[k]], &[fd]));
                    let fd_h: Vec<f64> =
                        (0..4).map(|l| (mp.g_lo[i][j].grad[l] - mm.g_lo[i][j].grad[l]) / (2.0 * step)).collect();
                    let h: Vec<f64> = (0..4).map(|l| mj.g_lo[i][j].hess(k, l)).collect();
                    worst = worst.max(rel_err(&h, &fd_h));
                }
            }
        }
    }
    outcome(
        worst <= 1e-5,
        format!("100 points: F^2 and g_ij gradients/Hessians vs central differences, worst rel {worst:.2e} (<= 1e-5)"),
    )
}

fn criterion_11() -> Outcome {
    let text = "[time_metric]\nfamily = \"power\"\na = 1.0\n\n[sampling]\nseed = 2024\nsamples = 200\n";
    let run = || suite_json(&run_verify(&parse_config(text).unwrap()).unwrap());
    let (a, b) = (run(), run());
    outcome(
        a == b && !a.is_empty(),
        format!("two verify runs of the same config: {} bytes each, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("metric oracle", criterion_1),
        ("G-scalar identities", criterion_2),
        ("Cartan oracle", criterion_3),
        ("torsion closed forms", criterion_4),
        ("curvature oracle", criterion_5),
        ("Ricci and scalar curvature", criterion_6),
        ("Einstein blocks", criterion_7),
        ("conservation laws", criterion_8),
        ("electromagnetism", criterion_9),
        ("autodiff soundness", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = Vec::new();
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {:>2} {:<28} {}  {}", n + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(n + 1);
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
