//! Enumeration of candidate classes `d L* - sum e_q E_q*` at a fixed degree,
//! in ascending lexicographic order of the multiplicity vector.

use crate::cluster::Configuration;

/// For each point `q`, the value `D . E~_q = e_q - sum_{p -> q} e_p` is fixed
/// once the last point proximate to `q` is assigned. `closing[i]` lists the
/// points whose value becomes known at index `i`.
fn closing_points(config: &Configuration) -> Vec<Vec<usize>> {
    let mut closing = vec![Vec::new(); config.len()];
    for q in 0..config.len() {
        let last = config.proximate_points(q).into_iter().max().unwrap_or(q);
        closing[last].push(q);
    }
    closing
}

fn strict_value(config: &Configuration, e: &[i64], q: usize) -> i64 {
    e[q] - config.proximate_points(q).iter().map(|&p| e[p]).sum::<i64>()
}

/// Multiplicity vectors with `|e_q| <= d`, `sum e_q^2 = d^2`,
/// `D . E~_q = 0` on non-dicritical points and `D . E~_q > 0` on dicritical
/// ones.
pub(crate) fn pencil_candidates(config: &Configuration, d: i64) -> Vec<Vec<i64>> {
    let closing = closing_points(config);
    let dicritical: Vec<bool> = config.points().iter().map(|p| p.dicritical).collect();
    let mut out = Vec::new();
    let mut e = vec![0i64; config.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        budget: i64,
        d: i64,
        e: &mut Vec<i64>,
        config: &Configuration,
        closing: &[Vec<usize>],
        dicritical: &[bool],
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == e.len() {
            if budget == 0 {
                out.push(e.clone());
            }
            return;
        }
        for v in -d..=d {
            if v * v > budget {
                continue;
            }
            e[i] = v;
            let ok = closing[i].iter().all(|&q| {
                let s = strict_value(config, e, q);
                if dicritical[q] {
                    s > 0
                } else {
                    s == 0
                }
            });
            if ok {
                rec(i + 1, budget - v * v, d, e, config, closing, dicritical, out);
            }
        }
        e[i] = 0;
    }
    rec(0, d * d, d, &mut e, config, &closing, &dicritical, &mut out);
    out
}

/// Multiplicity vectors with `0 <= e_q <= d`, `D . E~_q >= 0` for all `q`, and
/// either `D^2 = K.D = -1` or `D^2 < 0 <= K.D`.
pub(crate) fn negative_curve_candidates(config: &Configuration, d: i64) -> Vec<Vec<i64>> {
    let m = config.len();
    let closing = closing_points(config);
    let proximate_to: Vec<Vec<usize>> = (0..m).map(|p| config.proximate_to(p).to_vec()).collect();
    let mut out = Vec::new();
    let mut e = vec![0i64; m];
    // Both alternatives need sum e_q >= 3d - 1.
    let min_sum = 3 * d - 1;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        sum: i64,
        sq: i64,
        d: i64,
        min_sum: i64,
        e: &mut Vec<i64>,
        config: &Configuration,
        closing: &[Vec<usize>],
        proximate_to: &[Vec<usize>],
        out: &mut Vec<Vec<i64>>,
    ) {
        let m = e.len();
        if i == m {
            let square = d * d - sq;
            let kd = sum - 3 * d;
            if (square == -1 && kd == -1) || (square < 0 && kd >= 0) {
                out.push(e.clone());
            }
            return;
        }
        if sum + d * ((m - i) as i64) < min_sum {
            return;
        }
        // Points proximate to an earlier q may not exceed its remaining slack.
        let mut hi = d;
        for &q in &proximate_to[i] {
            let used: i64 = config
                .proximate_points(q)
                .iter()
                .filter(|&&p| p < i)
                .map(|&p| e[p])
                .sum();
            hi = hi.min(e[q] - used);
        }
        for v in 0..=hi {
            e[i] = v;
            if closing[i].iter().all(|&q| strict_value(config, e, q) >= 0) {
                rec(
                    i + 1,
                    sum + v,
                    sq + v * v,
                    d,
                    min_sum,
                    e,
                    config,
                    closing,
                    proximate_to,
                    out,
                );
            }
        }
        e[i] = 0;
    }
    rec(0, 0, 0, d, min_sum, &mut e, config, &closing, &proximate_to, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::parse_configuration;

    fn two_points() -> Configuration {
        parse_configuration("point p origin=(0:0:1)\npoint q origin=(1:0:1)\ndicritical p q\n", None).unwrap()
    }

    #[test]
    fn negative_curves_on_two_points() {
        let c = two_points();
        // The line through both points: L - E_p - E_q.
        assert_eq!(negative_curve_candidates(&c, 1), vec![vec![1, 1]]);
        // In degree two nothing has negative square and K.D >= -1.
        assert!(negative_curve_candidates(&c, 2).is_empty());
    }

    #[test]
    fn pencils_on_two_points() {
        let c = two_points();
        // d = 1: e = (+-1, 0) or (0, +-1) with D.E_q > 0 on both points fails.
        assert!(pencil_candidates(&c, 1).is_empty());
        let single = parse_configuration("point p origin=(0:0:1)\ndicritical p\n", None).unwrap();
        assert_eq!(pencil_candidates(&single, 1), vec![vec![1]]);
    }

    #[test]
    fn lexicographic_order() {
        let c = parse_configuration(
            "point a origin=(0:0:1)\npoint b origin=(1:0:1)\npoint c origin=(0:1:1)\npoint d origin=(1:1:1)\ndicritical a b c d\n",
            None,
        )
        .unwrap();
        let got = negative_curve_candidates(&c, 1);
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got, sorted);
        assert_eq!(got.len(), 6 + 4 + 1);
    }
}
