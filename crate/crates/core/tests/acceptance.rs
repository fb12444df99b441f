//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::thread;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hullforge::codes::Subspace;
use hullforge::diag::{
    diagonalize_maximal_hull, diagonalize_odd, orthogonal_basis_lcd, DiagError,
    DiagonalizationResult,
};
use hullforge::eaqecc::{base_params, extend_euclidean, extend_hermitian, rate_report, Extension};
use hullforge::matfq::inner;
use hullforge::oracle::{
    hull_by_enumeration, maximal_so_by_enumeration, min_distance_by_enumeration, parse_golden,
};
use hullforge::{EnumerationBudget, Fe, FieldSpec, Form, LinearCode, MatrixFq, Side};

const BUDGET: EnumerationBudget = EnumerationBudget::DEFAULT;

type Outcome = Result<String, String>;

fn gf(q: u32) -> FieldSpec {
    let (p, m) = match q {
        2 => (2, 1),
        3 => (3, 1),
        4 => (2, 2),
        5 => (5, 1),
        7 => (7, 1),
        8 => (2, 3),
        9 => (3, 2),
        25 => (5, 2),
        49 => (7, 2),
        _ => panic!("no field of order {q} in this suite"),
    };
    FieldSpec::new(p, m).unwrap()
}

fn oracle_ell(c: &LinearCode, form: Form) -> usize {
    hull_by_enumeration(c, form, BUDGET).unwrap().ell
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixtures() -> Vec<(String, LinearCode)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "code"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().to_string();
            (name, hullforge::cli::parse_code_file(&text).unwrap())
        })
        .collect()
}

fn forms_for(spec: &FieldSpec) -> Vec<Form> {
    let mut f = vec![Form::Euclidean];
    if spec.subfield_order().is_some() {
        f.push(Form::Hermitian);
    }
    f
}

fn random_invertible(spec: &FieldSpec, k: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
    loop {
        let e: Vec<Fe> = (0..k * k).map(|_| Fe(rng.gen_range(0..spec.q()))).collect();
        let m = MatrixFq::from_entries(spec, k, k, e).unwrap();
        if m.rank() == k {
            return m;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for (fi, q) in [2u32, 3, 4, 5, 7, 8, 9].into_iter().enumerate() {
        let spec = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + fi as u64);
        for i in 0..500 {
            let n = rng.gen_range(1..=12);
            let k = rng.gen_range(1..=n);
            let c = LinearCode::random(&spec, n, k, rng.gen()).unwrap();
            let ell = oracle_ell(&c, Form::Euclidean);
            let g = c.generator();
            let h = c.parity_check(Form::Euclidean).unwrap();
            let via_g = k - g.product(&g.transpose()).unwrap().rank();
            let via_h = n - k - h.product(&h.transpose()).unwrap().rank();
            ensure(via_g == ell && via_h == ell, || {
                format!("q={q} sample {i} [{n},{k}]: oracle {ell}, via G {via_g}, via H {via_h}")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} codes, both Gramian rank laws match the oracle"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let fields = [2u32, 3, 4, 5, 7, 8, 9];
    let mut hermitian = 0;
    for i in 0..100 {
        let spec = gf(fields[i % fields.len()]);
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(1..=n);
        let c = LinearCode::random(&spec, n, k, rng.gen()).unwrap();
        let g = c.generator();
        let g1 = random_invertible(&spec, k, &mut rng).product(g).unwrap();
        let g2 = random_invertible(&spec, k, &mut rng).product(g).unwrap();
        for form in forms_for(&spec) {
            let ell = oracle_ell(&c, form);
            let rank = g1.cross_gramian(&g2, form).unwrap().rank();
            ensure(rank == k - ell, || {
                format!("sample {i} q={} {form}: rank(G1 G2^T) = {rank}, k-l = {}", spec.q(), k - ell)
            })?;
            hermitian += usize::from(form == Form::Hermitian);
        }
    }
    Ok(format!("100 codes ({hermitian} also Hermitian), rank(G1 G2^T) = k - l"))
}

fn check_diag(c: &LinearCode, d: &DiagonalizationResult, ell: usize) -> Result<(), String> {
    let gram = d.new_gen.gramian(d.form).unwrap();
    ensure(gram.is_diagonal(), || "Gramian not diagonal".into())?;
    ensure(gram.diagonal() == d.diagonal, || "reported diagonal differs".into())?;
    ensure(d.new_gen.row_space_equal(c.generator()), || "row space changed".into())?;
    let prefix = d.diagonal.iter().take_while(|x| !x.is_zero()).count();
    ensure(prefix == c.k() - ell && d.diagonal[prefix..].iter().all(|x| x.is_zero()), || {
        format!("nonzero prefix {prefix}, expected {}", c.k() - ell)
    })?;
    d.check(ell).map_err(|e| e.to_string())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut euclid = 0;
    for q in [3u32, 5, 7, 9] {
        let spec = gf(q);
        for i in 0..200 {
            let n = rng.gen_range(1..=10);
            let k = rng.gen_range(1..=n);
            let c = LinearCode::random(&spec, n, k, rng.gen()).unwrap();
            let ell = oracle_ell(&c, Form::Euclidean);
            let d = diagonalize_odd(&c, Form::Euclidean).map_err(|e| format!("q={q} #{i}: {e}"))?;
            check_diag(&c, &d, ell).map_err(|e| format!("q={q} #{i} [{n},{k}]: {e}"))?;
            euclid += 1;
        }
    }
    let mut herm = 0;
    for (q, max_n) in [(9u32, 10usize), (49, 6)] {
        let spec = gf(q);
        for i in 0..200 {
            let n = rng.gen_range(1..=max_n);
            let k = rng.gen_range(1..=n);
            let c = LinearCode::random(&spec, n, k, rng.gen()).unwrap();
            let ell = oracle_ell(&c, Form::Hermitian);
            let d = diagonalize_odd(&c, Form::Hermitian).map_err(|e| format!("q={q} H #{i}: {e}"))?;
            check_diag(&c, &d, ell).map_err(|e| format!("q={q} H #{i} [{n},{k}]: {e}"))?;
            herm += 1;
        }
    }
    Ok(format!("{euclid} Euclidean (q=3,5,7,9) and {herm} Hermitian (q=9,49) diagonalizations"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut lcd, mut refused) = (0, 0);
    for q in [3u32, 5, 7] {
        let spec = gf(q);
        for i in 0..200 {
            let n = rng.gen_range(1..=8);
            let k = rng.gen_range(1..=n);
            let c = LinearCode::random(&spec, n, k, rng.gen()).unwrap();
            let ell = oracle_ell(&c, Form::Euclidean);
            match orthogonal_basis_lcd(&c, Form::Euclidean) {
                Ok(b) => {
                    ensure(ell == 0, || format!("q={q} #{i}: basis returned for l={ell}"))?;
                    ensure(b.rows() == k && b.row_space_equal(c.generator()), || {
                        format!("q={q} #{i}: not a basis of C")
                    })?;
                    for a in 0..k {
                        for bb in 0..k {
                            let v = inner(&spec, Form::Euclidean, b.row(a), b.row(bb));
                            ensure((a == bb) != v.is_zero(), || {
                                format!("q={q} #{i}: <b{a}, b{bb}> = {}", v.0)
                            })?;
                        }
                    }
                    lcd += 1;
                }
                Err(DiagError::NotLcd { ell: w }) => {
                    ensure(ell > 0 && w == ell, || {
                        format!("q={q} #{i}: refused with witness {w}, oracle l={ell}")
                    })?;
                    refused += 1;
                }
                Err(e) => return Err(format!("q={q} #{i}: {e}")),
            }
        }
    }
    ensure(lcd > 0 && refused > 0, || "sample lacks one of the two cases".into())?;
    Ok(format!("{lcd} LCD codes with orthogonal bases, {refused} refusals with l > 0"))
}

/// Every subspace of GF(q)^n of dimension >= 1, one rref generator each.
fn all_codes(spec: &FieldSpec, n: usize) -> Vec<LinearCode> {
    let q = spec.q();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let k = pivots.len();
        // free slots: right of the row's pivot, outside pivot columns
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let p = &pivots;
                (p[i] + 1..n).filter(move |j| !p.contains(j)).map(move |j| (i, j))
            })
            .collect();
        let count = (q as u64).pow(free.len() as u32);
        for mut idx in 0..count {
            let mut e = vec![Fe::ZERO; k * n];
            for (i, &p) in pivots.iter().enumerate() {
                e[i * n + p] = Fe::ONE;
            }
            for &(i, j) in &free {
                e[i * n + j] = Fe((idx % q as u64) as u32);
                idx /= q as u64;
            }
            let g = MatrixFq::from_entries(spec, k, n, e).unwrap();
            out.push(LinearCode::new(&g).unwrap());
        }
    }
    out
}

/// Gaussian binomial sum: the number of nonzero subspaces of GF(q)^n.
fn subspace_count(q: u64, n: u32) -> u64 {
    (1..=n)
        .map(|k| {
            let (mut num, mut den) = (1u64, 1u64);
            for i in 0..k {
                num *= q.pow(n - i) - 1;
                den *= q.pow(i + 1) - 1;
            }
            num / den
        })
        .sum()
}

fn criterion_5_and_6() -> (Outcome, Outcome) {
    let mut checked = 0;
    let mut maximal: Vec<(LinearCode, Form, usize)> = Vec::new();
    let mut run = || -> Result<(), String> {
        for (q, max_n) in [(2u32, 6usize), (4, 4)] {
            let spec = gf(q);
            for n in 1..=max_n {
                let codes = all_codes(&spec, n);
                ensure(codes.len() as u64 == subspace_count(q as u64, n as u32), || {
                    format!("q={q} n={n}: enumerated {} subspaces", codes.len())
                })?;
                for c in codes {
                    for form in forms_for(&spec) {
                        let ell = oracle_ell(&c, form);
                        let pred = c.is_hull_maximal_so_in(form, Side::Code, BUDGET).unwrap();
                        let by_oracle = maximal_so_by_enumeration(&c, form, BUDGET).unwrap();
                        ensure(pred == (c.k() - ell <= 1) && pred == by_oracle, || {
                            format!(
                                "q={q} {form} {:?}: predicate {pred}, oracle {by_oracle}, k-l = {}",
                                c.generator().to_codes(),
                                c.k() - ell
                            )
                        })?;
                        let pred_dual = c.is_hull_maximal_so_in(form, Side::Dual, BUDGET).unwrap();
                        ensure(pred_dual == (n - c.k() - ell <= 1), || {
                            format!("q={q} {form} {:?}: dual-side predicate {pred_dual}", c.generator().to_codes())
                        })?;
                        checked += 1;
                        if pred {
                            maximal.push((c.clone(), form, ell));
                        }
                    }
                }
            }
        }
        Ok(())
    };
    let c5 = run().map(|_| format!("{checked} (code, form) pairs: maximal <=> k - l <= 1"));
    if c5.is_err() {
        return (c5, Err("criterion 5 enumeration did not complete".into()));
    }
    let count = maximal.len();
    let c6 = maximal
        .iter()
        .try_for_each(|(c, form, ell)| {
            let d = diagonalize_maximal_hull(c, *form, BUDGET)
                .map_err(|e| format!("{form} {:?}: {e}", c.generator().to_codes()))?;
            check_diag(c, &d, *ell).map_err(|e| format!("{form} {:?}: {e}", c.generator().to_codes()))
        })
        .map(|_| format!("{count} maximal codes diagonalized"));
    (c5, c6)
}

fn criterion_7() -> Outcome {
    let dir = fixtures_dir();
    let c = hullforge::cli::parse_code_file(&fs::read_to_string(dir.join("hamming74.code")).unwrap())
        .unwrap();
    let golden = fs::read_to_string(dir.join("golden/hamming74.euclidean.hull")).unwrap();
    let (header, words) = parse_golden(&golden).map_err(|e| e.to_string())?;
    let h = hull_by_enumeration(&c, Form::Euclidean, BUDGET).unwrap();
    let oracle_words: Vec<Vec<u32>> =
        h.codewords.iter().map(|w| w.iter().map(|x| x.0).collect()).collect();
    ensure(header == [2, 1, 7, 3] && words == oracle_words && h.ell == 3, || {
        format!("golden hull {header:?} disagrees with oracle l={}", h.ell)
    })?;
    let [code_side, dual_side] = base_params(&c, Form::Euclidean, BUDGET).map_err(|e| e.to_string())?;
    let (n, k, l) = (7, 4, h.ell);
    let d = min_distance_by_enumeration(&c, BUDGET).unwrap();
    let dual = match c.dual(Form::Euclidean).unwrap() {
        Subspace::Code(d) => d,
        Subspace::Zero { .. } => return Err("Hamming dual is zero".into()),
    };
    let d_dual = min_distance_by_enumeration(&dual, BUDGET).unwrap();
    let expect = [
        (n, k - l, d, n - k - l, "[[7,1,3;0]]_2"),
        (n, n - k - l, d_dual, k - l, "[[7,0,4;1]]_2"),
    ];
    for (rec, (n, kk, d, c, notation)) in [&code_side, &dual_side].into_iter().zip(expect) {
        ensure(
            rec.n == n && rec.k_logical == kk && rec.d_exact == Some(d) && rec.c == c && rec.q == 2,
            || format!("record {} differs from formula {notation}", rec.notation()),
        )?;
        ensure(rec.notation() == notation, || format!("{} != {notation}", rec.notation()))?;
    }
    Ok(format!("{} and {}", code_side.notation(), dual_side.notation()))
}

/// Re-checks an extension certificate without trusting its recorded values.
fn check_extension(c: &LinearCode, ext: &Extension, form: Form, r: usize) -> Result<(), String> {
    let spec = c.spec();
    let cert = &ext.certificate;
    let (n, k) = (c.n(), c.k());
    let ell = oracle_ell(c, form);
    let e = &cert.extended;
    ensure(e.n() == n + r && e.k() == k, || format!("C' is [{}, {}]", e.n(), e.k()))?;
    let h = &cert.parity_check;
    ensure(h.rows() == n - k + r && h.rank() == n - k + r, || "H' has wrong rank".into())?;
    // H' annihilates C' under the form
    for g in e.generator().row_iter() {
        for hr in h.row_iter() {
            ensure(inner(spec, form, g, hr).is_zero(), || "C' not orthogonal to H'".into())?;
        }
    }
    let hh = match form {
        Form::Euclidean => h.product(&h.transpose()).unwrap(),
        Form::Hermitian => h.product(&h.conj_transpose().unwrap()).unwrap(),
    };
    ensure(hh.rank() == n - k - ell + r, || {
        format!("rank(H'H'^T) = {}, expected {}", hh.rank(), n - k - ell + r)
    })?;
    let ell_prime = oracle_ell(e, form);
    ensure(ell_prime == ell, || format!("hull dimension {ell} became {ell_prime}"))?;
    // admissibility of every alpha against its x row
    ensure(cert.alphas.len() == r && cert.x_rows.len() == r, || "certificate size".into())?;
    for (a, x) in cert.alphas.iter().zip(&cert.x_rows) {
        let power = match form {
            Form::Euclidean => spec.mul(*a, *a),
            Form::Hermitian => spec.pow(*a, spec.subfield_order().unwrap() as u64 + 1),
        };
        let xx = inner(spec, form, x, x);
        ensure(!a.is_zero() && !spec.add(power, xx).is_zero(), || {
            format!("alpha {} inadmissible for <x,x> = {}", a.0, xx.0)
        })?;
    }
    let d = min_distance_by_enumeration(c, BUDGET).unwrap();
    let dp = min_distance_by_enumeration(e, BUDGET).unwrap();
    ensure(d <= dp && dp <= d + r, || format!("d = {d}, d' = {dp}, r = {r}"))?;
    let rec = &ext.record;
    ensure(
        rec.n == n + r && rec.k_logical == k - ell && rec.c == n - k - ell + r && rec.d_exact == Some(dp),
        || format!("record {}", rec.notation()),
    )?;
    let rates = rate_report(n, k, ell, r).map_err(|e| e.to_string())?;
    ensure(rates.matches(rec), || "record rates differ from the rate report".into())
}

fn extension_suite(
    fields: &[u32],
    per_field: usize,
    max_n: usize,
    max_k: usize,
    form: Form,
    seed: u64,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut fixtures, mut runs) = (0, 0);
    for &q in fields {
        let spec = gf(q);
        let mut found = 0;
        while found < per_field {
            let n = rng.gen_range(2..=max_n);
            let k = rng.gen_range(1..=max_k.min(n - 1));
            let c = LinearCode::random(&spec, n, k, rng.gen()).unwrap();
            let ell = oracle_ell(&c, form);
            if k == ell {
                continue;
            }
            found += 1;
            for r in 1..=k - ell {
                let ext = match form {
                    Form::Euclidean => extend_euclidean(&c, r, BUDGET),
                    Form::Hermitian => extend_hermitian(&c, r, BUDGET),
                }
                .map_err(|e| format!("q={q} [{n},{k}] l={ell} r={r}: {e}"))?;
                check_extension(&c, &ext, form, r)
                    .map_err(|e| format!("q={q} {:?} r={r}: {e}", c.generator().to_codes()))?;
                runs += 1;
            }
            // one past the admissible range is refused
            let over = match form {
                Form::Euclidean => extend_euclidean(&c, k - ell + 1, BUDGET),
                Form::Hermitian => extend_hermitian(&c, k - ell + 1, BUDGET),
            };
            ensure(over.is_err(), || format!("q={q}: r = k-l+1 accepted"))?;
        }
        fixtures += found;
    }
    Ok(format!("{fixtures} codes, {runs} extensions verified"))
}

fn criterion_8() -> Outcome {
    extension_suite(&[5, 7], 15, 10, 5, Form::Euclidean, 8)
}

fn criterion_9() -> Outcome {
    extension_suite(&[9], 25, 7, 3, Form::Hermitian, 9)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let half = Ratio::new(1i64, 2);
    let mut high = 0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=200usize);
        let k = rng.gen_range(0..=n);
        let ell = rng.gen_range(0..=k.min(n - k));
        let r = rng.gen_range(0..=k - ell);
        let rep = rate_report(n, k, ell, r).map_err(|e| format!("#{i} ({n},{k},{ell},{r}): {e}"))?;
        let (n_, k_, l_, r_) = (n as i64, k as i64, ell as i64, r as i64);
        let net = Ratio::new(2 * k_ - n_ - r_, n_ + r_);
        let rate = Ratio::new(k_ - l_, n_ + r_);
        ensure(rep.net_rate.0 == net && rep.rate.0 == rate, || format!("#{i}: rates differ"))?;
        // net rate = (k - l - c)/(n + r) with c = n - k - l + r
        let c = n_ - k_ - l_ + r_;
        ensure(Ratio::new(k_ - l_ - c, n_ + r_) == net, || format!("#{i}: net rate identity"))?;
        let positive = net > Ratio::from_integer(0);
        let criterion = 2 * k_ > n_ && r_ < 2 * k_ - n_;
        ensure(rep.net_rate_positive == positive && positive == criterion, || {
            format!("#{i} ({n},{k},{ell},{r}): positive {positive}, criterion {criterion}")
        })?;
        if 4 * k_ >= 3 * n_ + r_ {
            high += 1;
            ensure(rep.high_dimension_condition && rate >= half, || {
                format!("#{i} ({n},{k},{ell},{r}): rate {rate} below 1/2")
            })?;
        }
    }
    Ok(format!("1000 tuples ({high} satisfy 4k >= 3n + r)"))
}

fn criterion_11() -> Outcome {
    let dir = fixtures_dir();
    let all = fixtures();
    for (name, c) in &all {
        let d = c.min_distance(BUDGET).map_err(|e| e.to_string())?;
        let od = min_distance_by_enumeration(c, BUDGET).unwrap();
        ensure(d == od, || format!("{name}: distance {d}, oracle {od}"))?;
        for form in forms_for(c.spec()) {
            let h = hull_by_enumeration(c, form, BUDGET).unwrap();
            let via = c.hull_dimension_via_gramian(form).unwrap();
            ensure(via == h.ell, || format!("{name} {form}: Gramian l {via}, oracle {}", h.ell))?;
            let golden = fs::read_to_string(dir.join(format!("golden/{name}.{form}.hull")))
                .map_err(|e| format!("{name} {form}: {e}"))?;
            let (_, words) = parse_golden(&golden).map_err(|e| e.to_string())?;
            let oracle_words: Vec<Vec<u32>> =
                h.codewords.iter().map(|w| w.iter().map(|x| x.0).collect()).collect();
            ensure(words == oracle_words, || format!("{name} {form}: golden hull differs"))?;
        }
        let out = Command::new(env!("CARGO_BIN_EXE_hullforge"))
            .arg("verify")
            .arg(dir.join(format!("{name}.code")))
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || {
            format!("{name}: verify exited {:?}\n{}", out.status.code(), String::from_utf8_lossy(&out.stdout))
        })?;
    }
    Ok(format!("{} fixtures agree with the oracle and pass verify", all.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let results: Vec<(usize, Outcome, f64)> = thread::scope(|s| {
        let timed = |f: fn() -> Outcome| {
            move || {
                let t = Instant::now();
                let r = f();
                (r, t.elapsed().as_secs_f64())
            }
        };
        let singles: Vec<(usize, fn() -> Outcome)> = vec![
            (1, criterion_1),
            (2, criterion_2),
            (3, criterion_3),
            (4, criterion_4),
            (7, criterion_7),
            (8, criterion_8),
            (9, criterion_9),
            (10, criterion_10),
            (11, criterion_11),
        ];
        let handles: Vec<_> = singles
            .into_iter()
            .map(|(i, f)| (i, s.spawn(timed(f))))
            .collect();
        let pair = s.spawn(|| {
            let t = Instant::now();
            let (a, b) = criterion_5_and_6();
            (a, b, t.elapsed().as_secs_f64())
        });
        let mut out: Vec<(usize, Outcome, f64)> = handles
            .into_iter()
            .map(|(i, h)| {
                let (r, t) = h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0));
                (i, r, t)
            })
            .collect();
        match pair.join() {
            Ok((a, b, t)) => {
                out.push((5, a, t));
                out.push((6, b, t));
            }
            Err(_) => {
                out.push((5, Err("panicked".into()), 0.0));
                out.push((6, Err("panicked".into()), 0.0));
            }
        }
        out.sort_by_key(|x| x.0);
        out
    });
    let mut failed = 0;
    for (i, r, t) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {i:>2} ({t:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {i:>2} ({t:.1}s): {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
