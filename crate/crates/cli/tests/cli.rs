use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn c4ex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c4ex"))
        .args(args)
        .env_remove("C4EX_CACHE_DIR")
        .output()
        .expect("run c4ex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn jsonl(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Parses `a` or `a/b`.
fn rational(cell: &str) -> (i64, i64) {
    match cell.split_once('/') {
        Some((a, b)) => (a.parse().unwrap(), b.parse().unwrap()),
        None => (cell.parse().unwrap(), 1),
    }
}

fn write_polarity(dir: &Path, q: u64) -> String {
    let path = dir.join(format!("pg{q}.g6"));
    let o = c4ex(&["construct", "--q", &q.to_string(), "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_polarity_graphs() {
    let o = c4ex(&["construct", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim().len(), 14);
    assert_eq!(stderr(&o).trim(), "n=13 e=24 degrees=3:4,4:9");

    let o = c4ex(&["construct", "--q", "3", "--delete", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("n=11 "));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.g6");
    let o = c4ex(&["construct", "--q", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "n=7 e=9 degrees=2:3,3:4");
    // One size byte and ceil(21 / 6) = 4 bytes of adjacency bits.
    assert_eq!(std::fs::read_to_string(&out).unwrap().trim().len(), 5);
}

#[test]
fn construct_rejects_bad_input() {
    let o = c4ex(&["construct", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a prime power"));
    assert_eq!(c4ex(&["construct", "--q", "3", "--delete", "5"]).status.code(), Some(2));
    assert_eq!(c4ex(&["construct"]).status.code(), Some(2));
}

#[test]
fn check_polarity_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_polarity(dir.path(), 3);

    // Read literally, the two-path inequality fails at I = N(v) for degree-4 vertices.
    let o = c4ex(&["check", "--in", &path, "--q", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["c4_free"], true);
    assert_eq!(r["deficiency"]["s_q1"].as_array().unwrap().len(), 9);
    assert_eq!(r["summary"]["violations"], 9);
    let bad: Vec<&Value> = r["two_path"].as_array().unwrap().iter().filter(|t| t["verdict"]["holds"] == false).collect();
    assert_eq!(bad.len(), 9);
    assert!(bad.iter().all(|t| t["k"] == 4 && t["l_nonnegative"] == false && t["convex_jensen_holds"] == true));

    let o = c4ex(&["check", "--in", &path, "--q", "3", "--binomial", "convex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["status"], "hold");

    for lemmas in ["fN", "weights"] {
        let o = c4ex(&["check", "--in", &path, "--q", "3", "--lemmas", lemmas]);
        assert_eq!(o.status.code(), Some(0), "{lemmas}");
    }
    let r = json(&c4ex(&["check", "--in", &path, "--q", "3", "--lemmas", "fN"]));
    let margins: Vec<&str> = r["verdicts"].as_array().unwrap().iter().map(|v| v["margin"].as_str().unwrap()).collect();
    assert_eq!(margins.len(), 13);
    assert!(r["two_path"].as_array().unwrap().is_empty());
}

#[test]
fn check_refuses_c4_and_reports_vacuous() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = dir.path().join("c4.g6");
    // The 4-cycle 0-1-3-2-0.
    std::fs::write(&c4, "Cr\n").unwrap();
    let o = c4ex(&["check", "--in", c4.to_str().unwrap(), "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let r = json(&o);
    assert_eq!(r["c4_free"], false);
    assert!(r["refused"].as_str().unwrap().contains("4-cycle"));

    let empty = dir.path().join("empty.g6");
    std::fs::write(&empty, "?\n").unwrap();
    let o = c4ex(&["check", "--in", empty.to_str().unwrap(), "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["summary"]["status"], "vacuous");
    assert_eq!(r["summary"]["vacuous"], r["summary"]["checked"]);

    let junk = dir.path().join("junk.g6");
    std::fs::write(&junk, "not graph6\n").unwrap();
    assert_eq!(c4ex(&["check", "--in", junk.to_str().unwrap(), "--q", "2"]).status.code(), Some(2));
    assert_eq!(c4ex(&["check", "--in", "/nonexistent/x.g6", "--q", "2"]).status.code(), Some(2));
}

const HEADER: &str = "n,q,r,class,reiman,erdos_conj,thm3,thm5,eq8,brown_lower,deletion_lower,best_upper,best_lower,n1_member,n2_member";

#[test]
fn bounds_single_row() {
    let o = c4ex(&["bounds", "--n", "21"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["21", "4", "0", "center", "52"]);
    assert_eq!(row[9], "50");
    assert_eq!(row[11], "52");
    assert_eq!(row[12], "50");
    assert!(lines.next().is_none());
}

#[test]
fn bounds_sweep_covers_a_block() {
    let o = c4ex(&["bounds", "--sweep", "5", "9"]);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[1] == "2" && r.len() == 15));
    let classes: Vec<&str> = rows.iter().map(|r| r[3]).collect();
    assert_eq!(classes, ["minus", "minus", "center", "plus", "plus"]);
}

#[test]
fn bounds_thm3_slope() {
    // Over the lower half of I_100 the column drops by exactly 0.92q = 92 per unit r.
    let q = 100u64;
    let (a, b) = (q * q + 1, q * q + q);
    let o = c4ex(&["bounds", "--sweep", &a.to_string(), &b.to_string()]);
    let text = stdout(&o);
    let thm3: Vec<(i64, i64)> = text.lines().skip(1).map(|l| rational(l.split(',').nth(6).unwrap())).collect();
    assert_eq!(thm3.len(), q as usize);
    for w in thm3.windows(2) {
        // Moving n up by one lowers r by one.
        let (x, y) = (w[0], w[1]);
        assert_eq!(y.0 * x.1 - x.0 * y.1, 92 * x.1 * y.1);
    }
}

#[test]
fn bounds_cells_are_exact() {
    let o = c4ex(&["bounds", "--sweep", "10", "16"]);
    for line in stdout(&o).lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        for (i, c) in cells.iter().enumerate() {
            if i == 5 || c.is_empty() || i == 3 || i >= 13 {
                continue;
            }
            assert!(!c.contains('.'), "column {i} holds {c}");
            rational(c);
        }
    }
    assert_eq!(c4ex(&["bounds", "--sweep", "9", "5"]).status.code(), Some(2));
    assert_eq!(c4ex(&["bounds"]).status.code(), Some(2));
    assert_eq!(c4ex(&["bounds", "--n", "5", "--eps", "abc"]).status.code(), Some(2));
}

#[test]
fn exact_values() {
    let r = json(&c4ex(&["exact", "--n", "7"]));
    assert_eq!(r["value"], 9);
    assert_eq!(r["status"]["kind"], "exact");
    let r = json(&c4ex(&["exact", "--n", "4"]));
    assert_eq!(r["value"], 4);

    let o = c4ex(&["exact", "--n", "13", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["status"]["kind"], "interrupted-with-bounds");
    assert_eq!((r["status"]["lo"].as_u64(), r["status"]["hi"].as_u64()), (Some(24), Some(26)));
    assert_eq!(r["nodes_explored"], 0);

    assert_eq!(c4ex(&["exact", "--n", "0"]).status.code(), Some(2));
    assert_eq!(c4ex(&["exact", "--n", "6", "--lower", "5", "--upper", "4"]).status.code(), Some(2));
}

#[test]
fn exact_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_c4ex"))
            .args(["exact", "--n", "8", "--threads", "2"])
            .env("C4EX_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = json(&run());
    assert_eq!((first["value"].as_u64(), first["cached"].as_bool()), (Some(11), Some(false)));
    let second = json(&run());
    assert_eq!((second["value"].as_u64(), second["cached"].as_bool()), (Some(11), Some(true)));
    let cache = std::fs::read_to_string(dir.path().join("ex_c4.jsonl")).unwrap();
    let rec: Value = serde_json::from_str(cache.lines().next().unwrap()).unwrap();
    assert_eq!(rec["n"], 8);
    assert_eq!(rec["status"], "exact");
}

#[test]
fn certify_points() {
    let o = c4ex(&["certify", "--which", "F", "--q", "10000", "--r", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "certified-negative");

    let o = c4ex(&["certify", "--which", "G", "--q", "10000", "--r", "3001"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "inapplicable");

    // Below the threshold the low end value is not negative.
    let o = c4ex(&["certify", "--which", "G", "--q", "90", "--r", "27"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict"], "failed-low-endpoint");

    assert_eq!(c4ex(&["certify", "--which", "H", "--q", "10", "--r", "1"]).status.code(), Some(2));
    assert_eq!(c4ex(&["certify", "--q", "10", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn certify_scan() {
    let o = c4ex(&["certify", "--scan", "--which", "G", "--qmax", "300"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = jsonl(&o);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["record"], "threshold");
    assert_eq!(lines[0]["q0"], 91);
    assert_eq!(lines[0]["last_failure"]["q"], 90);

    let o = c4ex(&["certify", "--scan", "--which", "G", "--qmin", "91", "--qmax", "300", "--window", "3", "--certificates"]);
    let lines = jsonl(&o);
    let certs: Vec<&Value> = lines.iter().filter(|l| l["record"] == "certificate").collect();
    let confirming = certs.iter().filter(|c| c["verdict"] == "certified-negative").count();
    // r = 1..=floor(0.3q) for q = 91..=94.
    assert_eq!(confirming, 27 + 27 + 27 + 28);
    assert_eq!(lines.last().unwrap()["record"], "threshold");

    // F needs far larger q; a short scan finds no threshold.
    let o = c4ex(&["certify", "--scan", "--which", "F", "--qmax", "200", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(jsonl(&o)[0]["q0"], Value::Null);

    let o = c4ex(&["certify", "--scan", "--which", "F", "--qmax", "3000", "--r-max", "3/100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(jsonl(&o)[0]["q0"], 2169);
}
