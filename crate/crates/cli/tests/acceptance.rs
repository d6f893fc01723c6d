//! Acceptance criteria 1-10: one PASS/FAIL line each. Every criterion runs
//! the library check and, where the expected value is computed rather than
//! quoted, an independent oracle written here.

use std::process::Command;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use lndfilt::families::{FamilyInstance, SearchConfig};
use lndfilt::morphisms::IsoDecision;
use lndfilt::poly::Monomial;
use lndfilt::selftest::{self, limits};
use lndfilt::Polynomial;

/// Determinant by cofactor expansion; matrices here are at most 4x4.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = a * det(&minor);
        total += if j % 2 == 0 { term } else { -term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Elementary divisors through determinantal divisors `d_k = gcd of k-minors`.
fn elementary_divisors(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = r.iter().map(|&i| c.iter().map(|&j| a[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Exponent difference of a two-term polynomial.
fn binomial_row(p: &Polynomial) -> Option<Vec<BigInt>> {
    let terms: Vec<(&Monomial, _)> = p.terms().collect();
    if terms.len() != 2 {
        return None;
    }
    let (a, b) = (terms[0].0, terms[1].0);
    Some((0..a.nvars()).map(|i| BigInt::from(i64::from(a.exp(i)) - i64::from(b.exp(i)))).collect())
}

fn lndfilt(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_lndfilt")).args(args).output().expect("binary runs");
    (String::from_utf8_lossy(&out.stdout).into_owned(), out.status.code().unwrap_or(-1))
}

fn oracle_1() -> Result<String, String> {
    let script = std::env::temp_dir().join(format!("lndfilt-acceptance-{}.txt", std::process::id()));
    std::fs::write(
        &script,
        "family new --n 2 --e 1 --P \"S^2\" --Q \"Y^2\"\ndeg --of x\ndeg --of y\ndeg --of z\ndeg --of \"y^2 - x*z\"\ndeg --of \"y*z\"\n",
    )
    .map_err(|e| e.to_string())?;
    let (out, code) = lndfilt(&["run", script.to_str().unwrap()]);
    let _ = std::fs::remove_file(&script);
    let degs: Vec<&str> = out.lines().skip_while(|l| !l.starts_with("degrees")).skip(2).collect();
    if code == 0 && degs == ["0", "2", "4", "1", "6"] {
        Ok("script degrees 0,2,4,1 and deg(y*z) = 6".into())
    } else {
        Err(format!("script exit {code}, degrees {degs:?}"))
    }
}

fn oracle_2() -> Result<String, String> {
    let f = selftest::toy().and_then(|t| t.filtration()).map_err(|e| e.to_string())?;
    let jhat = f.initial_ideal().map_err(|e| e.to_string())?;
    let rows: Vec<Vec<BigInt>> = jhat.generators().iter().filter_map(binomial_row).collect();
    if rows.len() != jhat.generators().len() {
        return Err("Ĵ has a generator that is not a binomial".into());
    }
    let divisors = elementary_divisors(&rows);
    if divisors.iter().all(|d| d.abs() == BigInt::from(1)) && divisors.len() == 2 {
        Ok("determinantal divisors give (1,1)".into())
    } else {
        Err(format!("determinantal divisors {divisors:?}"))
    }
}

fn oracle_6() -> Result<String, String> {
    let inst: FamilyInstance = selftest::danielewski(2, "Y^2").map_err(|e| e.to_string())?;
    let cfg = SearchConfig {
        image_degree: limits::SEARCH_IMAGE_DEGREE,
        nilp_bound: limits::SEARCH_NILP_BOUND,
        ..SearchConfig::default()
    };
    let result = inst.bounded_lnd_search(&cfg).map_err(|e| e.to_string())?;
    let ring = &inst.ring;
    let x2 = ring.parse_element("x^2").unwrap();
    let two_y = ring.parse_element("2*y").unwrap();
    let mut count = 0;
    for c in result.survivors() {
        let d = c.derivation.images();
        // f·∂ sends x to 0 and (y, z) to f·(x^2, 2y) with f in k[x].
        let proportional = ring.equal(&(&d[1] * &two_y), &(&d[2] * &x2));
        let f = d[1].div_exact(&x2).ok().flatten();
        let f_in_x = f.is_some_and(|f| f.uses_only(&[0]));
        if !(d[0].is_zero() && proportional && f_in_x) {
            return Err(format!("survivor {:?} is not f(x)·∂", c.images));
        }
        count += 1;
    }
    Ok(format!("{count} survivors checked as f(x)·∂ directly"))
}

fn oracle_8() -> Result<String, String> {
    let b1 = selftest::danielewski(2, "Y^2 + X").map_err(|e| e.to_string())?;
    let b2 = selftest::danielewski(2, "Y^2 + 2*X").map_err(|e| e.to_string())?;
    let decision = lndfilt::morphisms::iso_decide(&b1, &b2).map_err(|e| e.to_string())?;
    let IsoDecision::Isomorphic { witness, .. } = decision else {
        return Err(format!("verdict {}", decision.kind()));
    };
    let inverse = witness.inverse().ok_or("no inverse")?;
    let rel = &b1.ring.relations().generators()[0];
    let image = rel.substitute(witness.images()).map_err(|e| e.to_string())?;
    if !b2.ring.is_zero(&image) {
        return Err(format!("relation maps to {image}"));
    }
    for (i, img) in witness.images().iter().enumerate() {
        let back = img.substitute(inverse.images()).map_err(|e| e.to_string())?;
        if !b1.ring.equal(&back, &b1.ring.var(i)) {
            return Err(format!("inverse sends image of variable {i} to {back}"));
        }
    }
    for (i, img) in inverse.images().iter().enumerate() {
        let back = img.substitute(witness.images()).map_err(|e| e.to_string())?;
        if !b2.ring.equal(&back, &b2.ring.var(i)) {
            return Err(format!("witness sends preimage of variable {i} to {back}"));
        }
    }
    let (_, code) = lndfilt(&["iso", "--n", "2", "--P1", "Y^2+X", "--P2", "Y^2"]);
    if code != 5 {
        return Err(format!("`iso` on Y^2+X vs Y^2 exited {code}, expected 5"));
    }
    Ok("witness substituted by hand; CLI exits 5 on the negative case".into())
}

fn oracle_10() -> Result<String, String> {
    let (out, code) = lndfilt(&["selftest", "--criterion", "1", "--criterion", "2", "--criterion", "3", "--criterion", "4", "--criterion", "5", "--criterion", "6", "--criterion", "7", "--criterion", "8", "--criterion", "9"]);
    let passes = out.lines().filter(|l| l.starts_with("PASS")).count();
    if code == 0 && passes == 9 {
        Ok("`lndfilt selftest` over 1-9 exits 0".into())
    } else {
        Err(format!("`lndfilt selftest` exited {code} with {passes} passing lines"))
    }
}

fn main() {
    let mut failures = 0;
    for (id, title) in selftest::CRITERIA {
        let lib = selftest::run(id);
        let oracle = match id {
            1 => Some(oracle_1()),
            2 => Some(oracle_2()),
            6 => Some(oracle_6()),
            8 => Some(oracle_8()),
            10 => Some(oracle_10()),
            _ => None,
        };
        let (ok, detail) = match oracle {
            None => (lib.passed, lib.detail.clone()),
            Some(Ok(o)) => (lib.passed, format!("{}; oracle: {o}", lib.detail)),
            Some(Err(o)) => (false, format!("{}; oracle FAILED: {o}", lib.detail)),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id:>2} ({title}) [{} ms]: {detail}", lib.elapsed_ms);
        if !ok {
            failures += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", selftest::CRITERIA.len() - failures, selftest::CRITERIA.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
