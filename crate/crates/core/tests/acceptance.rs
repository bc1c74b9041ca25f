//! The twelve acceptance criteria. Runs without the libtest harness so that
//! every criterion prints a PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use novikov::basis::{basis_of_multidegree, dim_polylinear, standard_letters};
use novikov::combinatorics::{exponent_estimate, gf_coefficients, lemma1_lhs, lemma2_bounds};
use novikov::diagrams::{count_fillings_per_shape, enumerate_tableaux, enumerate_young_shapes, YoungShape};
use novikov::diffreal::checks::{basis_matrix, exhaustive_triples, random_triples};
use novikov::diffreal::linalg::rank_exact;
use novikov::diffreal::{expand, spanning_check, verify_identities_under_realization, DiffPolynomial, Normalizer};
use novikov::terms::{random_polylinear_term, Alphabet, Letter, TermPolynomial};

const SEED: u64 = 0;

/// Central binomials C(2n-2, n-1) for n = 1..10, written out.
const CENTRAL: [u64; 10] = [1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620];

/// C(2n-2, n-1) by the product formula, kept apart from the library.
fn central(n: u64) -> BigInt {
    let k = n - 1;
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(2 * k - i) / BigInt::from(i + 1);
    }
    c
}

/// Partition numbers by Euler's pentagonal recurrence.
fn partition_numbers(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n] += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += sign * p[n - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|v| v as u64).collect()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Duration, body: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = body()?;
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(format!("{detail}; {took:.1?}"))
}

fn c1_dimension() -> Outcome {
    timed(Duration::from_secs(30), || {
        for n in 1..=10usize {
            let got = enumerate_tableaux(n, &standard_letters(n))
                .map_err(|e| e.to_string())?
                .len();
            ensure(got as u64 == CENTRAL[n - 1], format!("n={n}: enumerated {got}"))?;
            ensure(
                central(n as u64) == BigInt::from(CENTRAL[n - 1]),
                format!("n={n}: formula"),
            )?;
            ensure(
                dim_polylinear(n as u64) == BigInt::from(got),
                format!("n={n}: dim_polylinear"),
            )?;
        }
        Ok("n=1..10".into())
    })
}

fn c2_golden_basis() -> Outcome {
    let golden: BTreeSet<String> = include_str!("golden/n4_basis.txt")
        .lines()
        .map(str::to_string)
        .collect();
    ensure(golden.len() == 20, "golden file must hold 20 distinct terms")?;
    let alphabet = Alphabet::standard(4);
    let basis = basis_of_multidegree(&standard_letters(4)).map_err(|e| e.to_string())?;
    let printed: BTreeSet<String> = basis.iter().map(|e| alphabet.print(&e.term)).collect();
    ensure(printed.len() == basis.len(), "duplicate printed terms")?;
    let missing: Vec<_> = golden.difference(&printed).collect();
    let extra: Vec<_> = printed.difference(&golden).collect();
    ensure(
        missing.is_empty() && extra.is_empty(),
        format!("missing {missing:?}, extra {extra:?}"),
    )?;
    Ok("20 terms, exact set match".into())
}

fn c3_shape_counts() -> Outcome {
    let all = enumerate_tableaux(4, &standard_letters(4)).map_err(|e| e.to_string())?;
    for (rows, want) in [(vec![1, 1, 1], 4), (vec![2, 1], 12), (vec![3], 4)] {
        let shape = YoungShape::new(rows).unwrap();
        let got = all.iter().filter(|t| t.shape() == &shape).count();
        ensure(got == want, format!("n=4 shape {shape}: {got}, want {want}"))?;
    }
    for n in 1..=9usize {
        let all = enumerate_tableaux(n, &standard_letters(n)).map_err(|e| e.to_string())?;
        for shape in enumerate_young_shapes(n - 1) {
            let got = all.iter().filter(|t| t.shape() == &shape).count();
            let formula = count_fillings_per_shape(&shape, n).map_err(|e| e.to_string())?;
            ensure(
                formula == BigInt::from(got),
                format!("n={n} shape {shape}: {got} vs {formula}"),
            )?;
        }
    }
    Ok("4/12/4 at n=4; formula agrees for n<=9".into())
}

fn c4_identities() -> Outcome {
    let mut triples = exhaustive_triples(4, 4);
    let exhaustive = triples.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    triples.extend(random_triples(&mut rng, 1000, 7, 4));
    let report = verify_identities_under_realization(&triples).map_err(|e| e.to_string())?;
    Ok(format!(
        "{exhaustive} exhaustive + 1000 random, {} triples, 0 failures",
        report.triples
    ))
}

fn c5_independence() -> Outcome {
    timed(Duration::from_secs(300), || {
        for n in 1..=7usize {
            let m = basis_matrix(n);
            let want = CENTRAL[n - 1] as usize;
            ensure(
                m.nrows() == want && m.ncols() == want,
                format!("n={n}: matrix not {want}x{want}"),
            )?;
            let r = rank_exact(&m);
            ensure(r == want, format!("n={n}: rank {r}, want {want}"))?;
        }
        Ok("full rank n=1..7".into())
    })
}

fn c6_spanning() -> Outcome {
    timed(Duration::from_secs(600), || {
        let catalan = [1usize, 1, 2, 5, 14, 42];
        let mut factorial = 1usize;
        for n in 2..=6usize {
            factorial *= n;
            let r = spanning_check(n, 6).map_err(|e| e.to_string())?;
            ensure(
                r.monomials == factorial * catalan[n - 1],
                format!("n={n}: {} monomials", r.monomials),
            )?;
            ensure(r.rank == CENTRAL[n - 1] as usize, format!("n={n}: rank {}", r.rank))?;
        }
        Ok("n=2..6".into())
    })
}

fn c7_convolution() -> Outcome {
    for n in 1..=30u64 {
        ensure(lemma1_lhs(n) == central(n), format!("n={n}"))?;
    }
    Ok("n=1..30".into())
}

fn c8_sandwich() -> Outcome {
    let two = BigInt::from(2);
    for n in 2..=500u64 {
        let c = central(n);
        // 2^(2n-3)/(n-1) <= c  <=>  2^(2n-3) <= (n-1) c
        let lower_ok = two.pow(2 * n as u32 - 3) <= BigInt::from(n - 1) * &c;
        let upper_ok = c <= two.pow(2 * n as u32 - 2);
        ensure(lower_ok && upper_ok, format!("n={n}: independent comparison"))?;
        let b = lemma2_bounds(n);
        ensure(b.value == c && b.holds(), format!("n={n}: library bounds"))?;
        ensure(
            b.lower == BigRational::new(two.pow(2 * n as u32 - 3), BigInt::from(n - 1)),
            format!("n={n}: lower bound value"),
        )?;
    }
    Ok("n=2..500".into())
}

fn c9_exponent() -> Outcome {
    let est = exponent_estimate(200);
    let v = est.as_rational();
    let lo = BigRational::new(BigInt::from(38), BigInt::from(10));
    let hi = BigRational::from_integer(BigInt::from(4));
    ensure(v > lo && v < hi, format!("{est} outside (3.8, 4.0)"))?;
    // est^200 against the exact bounds, as rationals
    let b = lemma2_bounds(200);
    let p = num_traits::pow(v.clone(), 200);
    ensure(
        b.lower <= p && p <= BigRational::from_integer(b.upper.clone()),
        "bounds do not bracket",
    )?;
    // floor at 6 digits: est <= root < est + 1e-6
    let step = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let value = BigRational::from_integer(b.value.clone());
    ensure(
        p <= value && num_traits::pow(v + step, 200) > value,
        "not within 1e-6 of the root",
    )?;
    Ok(format!("{est}"))
}

fn c10_gf() -> Outcome {
    let gf = gf_coefficients(30);
    ensure(gf.coefficient(0).is_zero(), "x^0 not zero")?;
    for n in 1..=30u64 {
        ensure(
            gf.coefficient(n as usize) == BigRational::from_integer(central(n)),
            format!("x^{n}"),
        )?;
    }
    ensure(gf.coefficient(4).to_integer().to_u64() == Some(20), "x^4")?;
    Ok("x^0..x^30".into())
}

fn c11_normal_form() -> Outcome {
    for n in 1..=5usize {
        let nz = Normalizer::new(&standard_letters(n)).map_err(|e| e.to_string())?;
        for (i, e) in nz.basis().iter().enumerate() {
            let v = nz.normalize_term(&e.term).map_err(|e| e.to_string())?;
            for (j, c) in v.coords.iter().enumerate() {
                let want = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                ensure(*c == want, format!("n={n}: basis element {i} coordinate {j} = {c}"))?;
            }
        }
    }
    let normalizers: Vec<Normalizer> = (1..=6)
        .map(|n| Normalizer::new(&standard_letters(n)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..200 {
        let n = rng.gen_range(1..=6usize);
        let t = random_polylinear_term(&mut rng, &standard_letters(n));
        let v = normalizers[n - 1]
            .normalize(&TermPolynomial::from_term(t.clone()))
            .map_err(|e| e.to_string())?;
        let mut sum = DiffPolynomial::<BigRational>::zero();
        for (e, c) in v.basis.iter().zip(&v.coords) {
            sum.add_scaled(&DiffPolynomial::from(&expand(&e.term)), c);
        }
        ensure(
            sum == DiffPolynomial::from(&expand(&t)),
            format!("sample {k}: reconstruction differs"),
        )?;
    }
    Ok("unit vectors n<=5; 200 reconstructions".into())
}

fn c12_one_letter() -> Outcome {
    let p = partition_numbers(11);
    for n in 1..=12usize {
        let got = enumerate_tableaux(n, &vec![Letter(0); n])
            .map_err(|e| e.to_string())?
            .len();
        ensure(got as u64 == p[n - 1], format!("n={n}: {got}, p(n-1) = {}", p[n - 1]))?;
    }
    Ok("n=1..12".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 dimension formula vs enumeration", c1_dimension),
        ("2 n=4 basis golden set", c2_golden_basis),
        ("3 shape counts", c3_shape_counts),
        ("4 identities under realization", c4_identities),
        ("5 independence n<=7", c5_independence),
        ("6 spanning n<=6", c6_spanning),
        ("7 partition convolution n<=30", c7_convolution),
        ("8 growth sandwich n<=500", c8_sandwich),
        ("9 exponent at n=200", c9_exponent),
        ("10 generating function", c10_gf),
        ("11 normal form", c11_normal_form),
        ("12 one-letter counts", c12_one_letter),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}  ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({why})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
