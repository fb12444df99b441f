//! Regenerates the committed fixtures and golden files.
//!
//! Run from the crate directory: `cargo run --example gen_fixtures`.
//! Random fixtures are the first seed (counting from 1) whose code matches
//! the stated predicate; hull goldens come from the brute-force oracle only.

use std::fs;
use std::path::Path;

use hullforge::cli::{format_code_file, parse_code_file, run};
use hullforge::oracle::{format_golden, hull_by_enumeration};
use hullforge::{EnumerationBudget, FieldSpec, Form, LinearCode};

type Pred = fn(&LinearCode) -> bool;

fn ell(c: &LinearCode, form: Form) -> usize {
    hull_by_enumeration(c, form, EnumerationBudget::DEFAULT).unwrap().ell
}

fn search(p: u64, m: u32, n: usize, k: usize, pred: Pred) -> (LinearCode, u64) {
    let spec = FieldSpec::new(p, m).unwrap();
    (1..)
        .map(|seed| (LinearCode::random(&spec, n, k, seed).unwrap(), seed))
        .find(|(c, _)| pred(c))
        .unwrap()
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let golden = dir.join("golden");
    fs::create_dir_all(&golden).unwrap();

    let random: [(&str, u64, u32, usize, usize, &str, Pred); 6] = [
        ("gf3_6_3", 3, 1, 6, 3, "any", |_| true),
        ("gf5_6_3", 5, 1, 6, 3, "euclidean hull dimension 1", |c| ell(c, Form::Euclidean) == 1),
        ("gf7_5_2_lcd", 7, 1, 5, 2, "euclidean LCD", |c| ell(c, Form::Euclidean) == 0),
        ("gf9_5_3", 3, 2, 5, 3, "hermitian hull dimension 1", |c| ell(c, Form::Hermitian) == 1),
        ("gf4_4_2_maximal", 2, 2, 4, 2, "hermitian hull dimension 1", |c| {
            ell(c, Form::Hermitian) == 1
        }),
        ("gf5_8_5", 5, 1, 8, 5, "euclidean hull dimension 1", |c| ell(c, Form::Euclidean) == 1),
    ];
    for (name, p, m, n, k, what, pred) in random {
        let (code, seed) = search(p, m, n, k, pred);
        let text = format!(
            "# random [{n},{k}] code over GF({p}^{m}), seed {seed}, predicate: {what}\n# generated by: cargo run --example gen_fixtures\n{}",
            format_code_file(&code)
        );
        fs::write(dir.join(format!("{name}.code")), text).unwrap();
    }

    // hull goldens for every fixture, per applicable form
    let mut names: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "code"))
        .collect();
    names.sort();
    for path in &names {
        let code = parse_code_file(&fs::read_to_string(path).unwrap()).unwrap();
        let stem = path.file_stem().unwrap().to_string_lossy().to_string();
        let mut forms = vec![Form::Euclidean];
        if code.spec().subfield_order().is_some() {
            forms.push(Form::Hermitian);
        }
        for form in forms {
            let h = hull_by_enumeration(&code, form, EnumerationBudget::DEFAULT).unwrap();
            let text = format!(
                "# oracle hull of {stem}.code, {form} form\n# generated by: cargo run --example gen_fixtures\n{}",
                format_golden(code.spec(), code.n(), h.ell, &h.codewords)
            );
            fs::write(golden.join(format!("{stem}.{form}.hull")), text).unwrap();
        }
    }

    // one JSON report per subcommand
    let fx = |f: &str| dir.join(f).to_string_lossy().to_string();
    let json: [(&str, Vec<String>); 10] = [
        ("field-info", vec!["field-info".into(), "3".into(), "2".into()]),
        ("hull", vec!["hull".into(), fx("hamming74.code")]),
        ("diag", vec!["diag".into(), fx("gf5_6_3.code")]),
        ("diag-pair", vec!["diag".into(), fx("hamming74.code"), "--method".into(), "pair".into()]),
        ("mindist", vec!["mindist".into(), fx("hamming74.code")]),
        ("eaqecc-base", vec!["eaqecc-base".into(), fx("hamming74.code")]),
        ("eaqecc-extend", vec!["eaqecc-extend".into(), fx("gf5_6_3.code"), "--r".into(), "2".into()]),
        (
            "eaqecc-extend-hermitian",
            vec!["eaqecc-extend".into(), fx("gf9_5_3.code"), "--form".into(), "hermitian".into(), "--r".into(), "1".into()],
        ),
        ("verify", vec!["verify".into(), fx("hamming74.code")]),
        ("random", vec!["random".into(), "3".into(), "1".into(), "6".into(), "3".into(), "--seed".into(), "1".into()]),
    ];
    for (name, args) in json {
        let mut argv = vec!["hullforge".to_string()];
        argv.extend(args);
        argv.push("--json".into());
        let out = run(argv);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        fs::write(golden.join(format!("{name}.json")), out.stdout).unwrap();
    }
}
