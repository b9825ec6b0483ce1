use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stairmesh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn rectangle_study_has_zero_area_difference() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("study.csv");
    let input = data("rectangle.csv");
    let o = run(&[
        "study",
        "--input",
        path_str(&input),
        "--levels",
        "50,100",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(
        text.lines().next(),
        Some("n,area_diff_pct,boundary_nodes,interior_nodes")
    );
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[0][1]), ("50", "0"));
    assert_eq!((rows[1][0], rows[1][1]), ("100", "0"));
}

#[test]
fn circle_study_matches_golden() {
    let input = data("circle64.csv");
    let o = run(&[
        "study",
        "--input",
        path_str(&input),
        "--levels",
        "50,100,200,300",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let golden = std::fs::read_to_string(data("circle64_study.csv")).unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), golden);
}

#[test]
fn single_partition_is_an_input_error() {
    let input = data("rectangle.csv");
    let o = run(&[
        "trace",
        "--input",
        path_str(&input),
        "--nx",
        "1",
        "--ny",
        "10",
    ]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("at least 2"), "{}", stderr(&o));
}

#[test]
fn unknown_flag_prints_usage_and_exits_1() {
    let o = run(&["trace", "--frobnicate"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("Usage"), "{}", stderr(&o));
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    std::fs::write(&input, "0,0\n1,abc\n").unwrap();
    let o = run(&[
        "trace",
        "--input",
        path_str(&input),
        "--nx",
        "10",
        "--ny",
        "10",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn trace_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let sliver = dir.path().join("sliver.csv");
    // no node of the padded 3 x 3 grid falls inside the triangle
    std::fs::write(&sliver, "0.52,0.52\n0.58,0.52\n0.58,0.58\n").unwrap();
    let o = run(&[
        "trace",
        "--input",
        path_str(&sliver),
        "--nx",
        "3",
        "--ny",
        "3",
        "--padding",
        "0.5",
    ]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn trace_and_study_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("circle64.csv");
    let mut outputs = Vec::new();
    for run_no in 0..2 {
        let mesh = dir.path().join(format!("mesh{run_no}.csv"));
        let svg = dir.path().join(format!("plot{run_no}.svg"));
        let study = dir.path().join(format!("study{run_no}.csv"));
        let o = run(&[
            "trace",
            "--input",
            path_str(&input),
            "--nx",
            "80",
            "--ny",
            "80",
            "--out-mesh",
            path_str(&mesh),
            "--out-svg",
            path_str(&svg),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let o = run(&[
            "study",
            "--input",
            path_str(&input),
            "--levels",
            "20,50,100",
            "--out",
            path_str(&study),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        outputs.push(
            [mesh, svg, study]
                .iter()
                .map(|p| std::fs::read(p).unwrap())
                .collect::<Vec<_>>(),
        );
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn trace_writes_mesh_to_stdout_when_no_path_given() {
    let input = data("rectangle.csv");
    let o = run(&[
        "trace",
        "--input",
        path_str(&input),
        "--nx",
        "4",
        "--ny",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# stairmesh mesh v1\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 15);
    assert!(o.stderr.is_empty());
}

#[test]
fn distances_csv_lists_chain_in_order() {
    let input = data("circle64.csv");
    let o = run(&[
        "distances",
        "--input",
        path_str(&input),
        "--nx",
        "30",
        "--ny",
        "30",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("chain_position,i,j,distance"));
    for (k, line) in lines.enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], k.to_string());
        let d: f64 = f[3].parse().unwrap();
        assert!((0.0..0.8 / 30.0 * 2f64.sqrt()).contains(&d), "{line}");
    }
}

#[test]
fn json_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.json");
    std::fs::write(&input, "[[0,0],[1,0],[1,1],[0,1]]").unwrap();
    let o = run(&["study", "--input", path_str(&input), "--levels", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "n,area_diff_pct,boundary_nodes,interior_nodes\n4,0,16,9\n"
    );
}
