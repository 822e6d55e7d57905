use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypersemi::format::{parse_semigroup, serialize_semigroup};
use hypersemi::group::make_cyclic;
use hypersemi::semigroup::random::random_clifford;
use hypersemi::semigroup::{make_brandt, make_chain, make_group_with_zero, make_left_zero, make_null};
use hypersemi::{FiniteSemigroup, Semigroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

const C4: &str = "# C4\n4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersemi")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_semigroup(dir: &TempDir, name: &str, s: &FiniteSemigroup) -> PathBuf {
    write(dir, name, &serialize_semigroup(s))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_structure() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.tbl", C4);
    let out = run(&["analyze", s(&c4)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("group: yes") && text.contains("Clifford: yes"), "{text}");

    let b = write_semigroup(&dir, "b22.tbl", &make_brandt(&make_cyclic(2).unwrap(), 2).unwrap());
    let text = stdout(&run(&["analyze", s(&b)]));
    assert!(text.contains("inverse: yes") && text.contains("Clifford: no"), "{text}");

    let lz = write_semigroup(&dir, "lz2.tbl", &make_left_zero(2));
    let text = stdout(&run(&["analyze", s(&lz)]));
    assert!(text.contains("regular: yes") && text.contains("inverse: no"), "{text}");
}

#[test]
fn parse_errors_exit_one_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.tbl", "# broken\n2\n0 1\n1 x\n");
    let out = run(&["analyze", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(code(&run(&["analyze", "/nonexistent/file.tbl"])), 1);
    assert_eq!(code(&run(&["no-such-command"])), 1);
    assert_eq!(code(&run(&["exp", s(&bad), "--regular", "--idempotents"])), 1);
}

#[test]
fn exp_lists_seven_cosets_of_c4() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.tbl", C4);
    let text = stdout(&run(&["exp", s(&c4), "--regular"]));
    assert!(text.starts_with("regular elements: 7\n"), "{text}");
    assert_eq!(text.lines().count(), 8);
    let text = stdout(&run(&["exp", s(&c4), "--product", "{0,2}", "{1}"]));
    assert_eq!(text, "{0,2}*{1} = {1,3}\n");
    let json: Value = serde_json::from_str(&stdout(&run(&["exp", s(&c4), "--product", "0,2", "1", "--json"]))).unwrap();
    assert_eq!(json["product"], 0b1010);
}

#[test]
fn conv_classifies_coset_measures() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.tbl", C4);
    let m = write(&dir, "m.measure", "1: 1/2\n3: 1/2\n");
    let text = stdout(&run(&["conv", "classify", s(&c4), s(&m)]));
    assert!(text.contains("regular: Haar({0,2})*1"), "{text}");
    assert!(text.contains("idempotent: no"), "{text}");
    let text = stdout(&run(&["conv", "mul", s(&c4), s(&m), s(&m)]));
    assert_eq!(text, "0: 1/2\n2: 1/2\n");
    let bad = write(&dir, "bad.measure", "0: 1/2\n1: 1/3\n");
    assert_eq!(code(&run(&["conv", "mul", s(&c4), s(&bad), s(&m)])), 1);
    let out = run(&["conv", "support-iso", s(&c4)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("regular measures: 7"));
}

#[test]
fn superext_of_c4_is_a_twelve_element_table() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.tbl", C4);
    let out = run(&["superext", s(&c4)]);
    assert_eq!(code(&out), 0);
    let table = parse_semigroup(&stdout(&out)).expect("output is a Cayley table");
    assert_eq!(table.order(), 12);
    let json: Value = serde_json::from_str(&stdout(&run(&["superext", s(&c4), "--json"]))).unwrap();
    assert_eq!(json["families"].as_array().unwrap().len(), 12);
    assert_eq!(json["clifford"], true);
    assert_eq!(json["inverse"], true);
}

#[test]
fn embed_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c2z = write_semigroup(&dir, "c2z.tbl", &make_group_with_zero(&make_cyclic(2).unwrap()));
    assert_eq!(code(&run(&["embed", s(&c2z)])), 0);
    assert_eq!(code(&run(&["embed", s(&c2z), "--target", "conv"])), 0);
    let b = write_semigroup(&dir, "b22.tbl", &make_brandt(&make_cyclic(2).unwrap(), 2).unwrap());
    let out = run(&["embed", s(&b)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("(3) x^2 x^-1 idempotent iff x is: FAIL"));
    let lz = write_semigroup(&dir, "lz2.tbl", &make_left_zero(2));
    assert_eq!(code(&run(&["embed", s(&lz)])), 2);
    let null = write_semigroup(&dir, "n2.tbl", &make_null(2));
    assert_eq!(code(&run(&["embed", s(&null)])), 3);
    let chain = write_semigroup(&dir, "chain11.tbl", &make_chain(11));
    let out = run(&["embed", s(&chain)]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
    assert_eq!(code(&run(&["embed", s(&chain), "--max-product-order", "2048"])), 0);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.tbl", C4);
    let b = write_semigroup(&dir, "b22.tbl", &make_brandt(&make_cyclic(2).unwrap(), 2).unwrap());
    for args in [
        vec!["verify-paper", "--quick", "--json"],
        vec!["embed", s(&c4), "--json"],
        vec!["embed", s(&b), "--json"],
        vec!["superext", s(&c4), "--json"],
        vec!["exp", s(&c4), "--regular", "--json"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn verify_paper_exit_code_matches_verdicts() {
    let out = run(&["verify-paper", "--quick", "--json"]);
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let claims = json["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 10);
    let all = claims.iter().all(|c| c["passed"] == true);
    assert_eq!(json["passed"], all);
    assert_eq!(code(&out), if all { 0 } else { 1 });
    for c in claims.iter().filter(|c| c["passed"] == false) {
        assert!(!c["failures"].as_array().unwrap().is_empty(), "a FAIL names what broke");
    }
    let text = stdout(&run(&["verify-paper", "--quick"]));
    assert_eq!(text.lines().filter(|l| l.contains("PASS") || l.contains("FAIL")).count(), 10);
}

fn table(v: &Value) -> Vec<Vec<usize>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect())
        .collect()
}

fn subset(v: &Value, n: usize) -> Vec<usize> {
    let bit = |i: usize, hex: &[u8]| {
        let k = hex.len().checked_sub(1 + i / 4)?;
        let d = (hex[k] as char).to_digit(16).unwrap();
        Some(d >> (i % 4) & 1 == 1)
    };
    match v {
        Value::Number(m) => {
            let m = m.as_u64().unwrap();
            (0..n).filter(|i| m >> i & 1 == 1).collect()
        }
        Value::String(h) => {
            let hex = h.strip_prefix("0x").unwrap().as_bytes();
            (0..n).filter(|&i| bit(i, hex) == Some(true)).collect()
        }
        other => panic!("not a subset: {other}"),
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type Frac = (u128, u128);

fn add(a: Frac, b: Frac) -> Frac {
    let den = a.1 / gcd(a.1, b.1) * b.1;
    let num = a.0 * (den / a.1) + b.0 * (den / b.1);
    let g = gcd(num, den);
    (num / g, den / g)
}

fn measure(v: &Value, n: usize) -> Vec<Frac> {
    let mut out = vec![(0, 1); n];
    for (k, w) in v.as_object().unwrap() {
        let (a, b) = w.as_str().unwrap().split_once('/').unwrap();
        out[k.parse::<usize>().unwrap()] = (a.parse().unwrap(), b.parse().unwrap());
    }
    out
}

/// Re-checks an embed report from its own contents: source table, group table, images.
fn revalidate(json: &Value) {
    let src = table(&json["source"]["table"]);
    let grp = table(&json["group"]["table"]);
    let n = grp.len();
    let order: usize = json["factors"].as_array().unwrap().iter().map(|f| f["order"].as_u64().unwrap() as usize).product();
    assert_eq!(order, n);
    match json["outcome"].as_str().unwrap() {
        "exp-embedded" => {
            let images: Vec<Vec<usize>> = json["images"].as_array().unwrap().iter().map(|v| subset(v, n)).collect();
            for (i, a) in images.iter().enumerate() {
                assert!(images[..i].iter().all(|b| b != a), "images are distinct");
            }
            for x in 0..src.len() {
                for y in 0..src.len() {
                    let mut prod: Vec<usize> =
                        images[x].iter().flat_map(|&a| images[y].iter().map(|&b| grp[a][b]).collect::<Vec<_>>()).collect();
                    prod.sort_unstable();
                    prod.dedup();
                    assert_eq!(prod, images[src[x][y]], "product of {x} and {y}");
                }
            }
        }
        "measure-embedded" => {
            let images: Vec<Vec<Frac>> = json["images"].as_array().unwrap().iter().map(|v| measure(v, n)).collect();
            for (i, a) in images.iter().enumerate() {
                assert!(images[..i].iter().all(|b| b != a), "images are distinct");
            }
            for x in 0..src.len() {
                for y in 0..src.len() {
                    let mut prod = vec![(0u128, 1u128); n];
                    for (a, wa) in images[x].iter().enumerate().filter(|(_, w)| w.0 > 0) {
                        for (b, wb) in images[y].iter().enumerate().filter(|(_, w)| w.0 > 0) {
                            let w = (wa.0 * wb.0, wa.1 * wb.1);
                            let g = gcd(w.0, w.1);
                            prod[grp[a][b]] = add(prod[grp[a][b]], (w.0 / g, w.1 / g));
                        }
                    }
                    assert_eq!(prod, images[src[x][y]], "convolution of {x} and {y}");
                }
            }
        }
        other => panic!("not an embedding: {other}"),
    }
}

#[test]
fn embed_reports_revalidate_from_json() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut inputs = vec![
        write(&dir, "c4.tbl", C4),
        write_semigroup(&dir, "c2z.tbl", &make_group_with_zero(&make_cyclic(2).unwrap())),
        write_semigroup(&dir, "chain7.tbl", &make_chain(7)),
    ];
    for k in 0..6 {
        let sample = random_clifford(&mut rng, 12, 256).semigroup;
        inputs.push(write_semigroup(&dir, &format!("random{k}.tbl"), &sample));
    }
    for p in &inputs {
        for target in ["exp", "conv"] {
            let out = run(&["embed", s(p), "--target", target, "--json"]);
            assert_eq!(code(&out), 0, "{p:?} {target}");
            revalidate(&serde_json::from_str(&stdout(&out)).unwrap());
        }
    }
}

#[test]
fn strong_semilattice_input_is_accepted() {
    let dir = TempDir::new().unwrap();
    let text = "strong-semilattice\nidempotents 2\norder 0<1\ngroup 0 C1\ngroup 1 C2\nlink 1 0 : 0 0\n";
    let p = write(&dir, "ss.tbl", text);
    let out = run(&["analyze", s(&p)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("order: 3") && text.contains("Clifford: yes"), "{text}");
    assert_eq!(code(&run(&["embed", s(&p)])), 0);
}
