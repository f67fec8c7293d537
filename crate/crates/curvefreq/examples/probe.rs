use curvefreq::arcs::builtin_scenario;
use curvefreq::asym::{breve_series_for_chart, builtin_spec, varphi_series_all};
use curvefreq::comb::factorial;
use curvefreq::frequency::frequency_counting_estimate;
use curvefreq::rational::{rat, to_decimal, Rational};
use curvefreq::tau::TauEngine;
use num::Signed;
use std::time::Instant;

fn main() {
    // Criterion 7: estimate errors over the L doubling schedule.
    let s = builtin_scenario("genus2-figure8-noflip").unwrap();
    let exact = rat(1, 48);
    for l in [50u64, 100, 200, 400] {
        let t = Instant::now();
        let est = frequency_counting_estimate(&s, l).unwrap();
        let err = (est - &exact).abs() / &exact;
        println!(
            "L = {l}: relerr = {} ({} s)",
            to_decimal(&err, 8),
            t.elapsed().as_secs_f32()
        );
    }

    // Criterion 4: oracle identity cost at N = 20 for the figure-8 charts.
    let t = Instant::now();
    let spec = builtin_spec("figure8").unwrap();
    for (i, chart) in spec.charts.iter().enumerate() {
        let ints = varphi_series_all(chart, 0, 20).unwrap();
        let closed = breve_series_for_chart(chart, 0, 20);
        for n in 0..=20usize {
            let lhs = Rational::from_integer(factorial(n as u64 + 3)) * &ints[n];
            assert_eq!(lhs, closed.coefficient(n), "chart {i} N={n}");
        }
    }
    println!("criterion 4 figure-8 N<=20: {} s", t.elapsed().as_secs_f32());

    // Criterion 3: tau sweep g <= 5, n <= 5 and the (8,1) ratio.
    let t = Instant::now();
    let e = TauEngine::new();
    let mut count = 0u64;
    for g in 0u32..=5 {
        for n in 1usize..=5 {
            if 2 * g as i64 - 2 + n as i64 <= 0 {
                continue;
            }
            let dim = 3 * g as i64 - 3 + n as i64;
            for d in compositions(dim as u32, n) {
                assert!(e.upper_bound_holds(g, &d).unwrap(), "g={g} d={d:?}");
                count += 1;
            }
        }
    }
    println!("criterion 3 sweep ({count} tuples): {} s", t.elapsed().as_secs_f32());
    let t = Instant::now();
    let tau = e.tau(8, &[22]).unwrap();
    let main = e.main_term(8, &[22]).unwrap();
    println!(
        "tau(8,[22]) ratio = {} ({} s)",
        to_decimal(&(tau / main), 8),
        t.elapsed().as_secs_f32()
    );

    // Criterion 2: the volume sweep cost.
    let t = Instant::now();
    for g in 0u32..=4 {
        for n in 1usize..=4 {
            if 2 * g as i64 - 2 + n as i64 <= 0 {
                continue;
            }
            let names: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let v = curvefreq::volume::kontsevich_polynomial(&e, g, &refs).unwrap();
            assert!(v.all_coefficients_positive());
        }
    }
    println!("criterion 2 volumes g<=4 n<=4: {} s", t.elapsed().as_secs_f32());
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}
