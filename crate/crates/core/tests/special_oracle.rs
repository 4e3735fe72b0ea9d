//! Accuracy check of the Bessel kernels against frozen extended-precision
//! reference values (tests/data/special_oracle.csv, 50-digit mpmath run;
//! regenerate with gen_special_oracle.py in the same directory).

use qwr_core::special::{bessel_j, bessel_k_mod, spherical_bessel_j, spherical_k_mod};

const ORACLE: &str = include_str!("data/special_oracle.csv");

struct Row {
    func: &'static str,
    order: i32,
    x: f64,
    value: f64,
}

fn rows() -> Vec<Row> {
    ORACLE
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut it = line.split(',');
            let func = it.next().unwrap();
            let order: i32 = it.next().unwrap().parse().unwrap();
            let x: f64 = it.next().unwrap().parse().unwrap();
            let value: f64 = it.next().unwrap().parse().unwrap();
            Row {
                func,
                order,
                x,
                value,
            }
        })
        .collect()
}

#[test]
fn all_kernels_within_1e10_relative() {
    let rows = rows();
    assert_eq!(rows.len(), 1000);
    let mut worst: (f64, String) = (0.0, String::new());
    for row in &rows {
        let got = match row.func {
            "j" => bessel_j(row.order, row.x),
            "k" => bessel_k_mod(row.order, row.x),
            "sj" => spherical_bessel_j(row.order, row.x),
            "sk" => spherical_k_mod(row.order, row.x),
            other => panic!("unknown function tag {other}"),
        }
        .unwrap()
        .value;
        // relative error with a subnormal-safe floor
        let rel = (got - row.value).abs() / row.value.abs().max(1e-280);
        if rel > worst.0 {
            worst = (
                rel,
                format!("{}(order={}, x={})", row.func, row.order, row.x),
            );
        }
        assert!(
            rel <= 1e-10,
            "{}(order={}, x={}): got {:e}, want {:e}, rel {:e}",
            row.func,
            row.order,
            row.x,
            got,
            row.value,
            rel
        );
    }
    println!("worst relative error {:.3e} at {}", worst.0, worst.1);
}
