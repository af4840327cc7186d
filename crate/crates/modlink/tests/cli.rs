use std::process::{Command, Output};

fn modlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlink")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = modlink(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classgroup_row() {
    let s = stdout(&["classgroup", "--m", "79"]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "m,D,h,h_plus,unit_norm,regulator,total_length_paper,total_length_geom");
    assert!(lines[1].starts_with("79,316,3,6,1,5.07513475044,"));
}

#[test]
fn words_per_class() {
    let s = stdout(&["word", "--m", "5"]);
    assert_eq!(s.trim(), "(-1,1,1) 3 xy");
    assert_eq!(stdout(&["word", "--m", "79"]).lines().count(), 6);
}

#[test]
fn link_formats() {
    let dt = stdout(&["link", "--words", "xy"]);
    assert!(dt.starts_with("DT:[("));
    let paper = stdout(&["link", "--words", "xy", "--dt-convention", "paper"]);
    assert_ne!(dt, paper);
    let csv = stdout(&["link", "--m", "2", "--format", "csv"]);
    assert!(csv.lines().nth(1).unwrap().starts_with("2,2,4,"));
}

#[test]
fn volume_of_figure_eight() {
    let s = stdout(&["volume", "--dt", "DT:[(4,6,8,2)]"]);
    assert!(s.contains("status converged\n"));
    assert!(s.contains("volume 2.02988321282\n"));
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("t.txt");
    stdout(&["volume", "--dt", "4 6 8 2", "--triangulation", tri.to_str().unwrap()]);
    let text = std::fs::read_to_string(tri).unwrap();
    let t = modlink_core::triangulation::Triangulation::from_text(&text).unwrap();
    t.check_ideal().unwrap();
    let s = stdout(&["volume", "--dt", "DT:[(4,6,2)]", "--restarts", "3"]);
    assert!(s.contains("status not_hyperbolic\n"));
    assert!(!s.contains("volume"));
    assert!(!modlink(&["volume", "--dt", "DT:[(4,6,4)]"]).status.success());
}

#[test]
fn survey_is_reproducible_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    stdout(&["survey", "--max-m", "15", "--out", a.to_str().unwrap(), "--threads", "1"]);
    let out = Command::new(env!("CARGO_BIN_EXE_modlink"))
        .args(["survey", "--max-m", "15", "--out", b.to_str().unwrap()])
        .env("MODLINK_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert_eq!(String::from_utf8(ta).unwrap().lines().count(), 1 + 10);
    let fit = stdout(&["fit", a.to_str().unwrap()]);
    assert!(fit.contains("n_points 10\n"));
    assert!(fit.contains("excluded 0 of 10"));
}

#[test]
fn family_csv() {
    let s = stdout(&["family", "--pattern", "xn_ym", "--max-n", "2", "--m", "2"]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "n,word,length,n_crossings,dt_code,volume,status,iterations");
    assert!(lines[1].starts_with("1,xyy,3,"));
    assert!(lines[2].starts_with("2,xxyy,4,"));
}
