use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_contactforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn small_manifest(dir: &Path, seed: &str) -> PathBuf {
    let path = dir.join(format!("m{seed}.txt"));
    let o = run(&[
        "generate",
        "--samples",
        "300",
        "--seed",
        seed,
        "--out",
        p(&path),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

fn heatmap(path: &Path) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn no_arguments_prints_usage_and_exits_1() {
    let o = run(&[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn help_exits_0_and_lists_subcommands() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for cmd in [
        "generate",
        "label",
        "stats",
        "sample",
        "train",
        "eval",
        "ablate",
        "export-heatmap",
        "compare-losses",
    ] {
        assert!(stdout(&o).contains(cmd), "missing {cmd}");
    }
    assert_eq!(run(&["train", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let m = small_manifest(dir.path(), "1");
    let out = dir.path().join("x.bin");
    assert_eq!(
        run(&["train", "--manifest", p(&m), "--bogus", "--out", p(&out)])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "train",
            "--manifest",
            p(&m),
            "--steps",
            "0",
            "--out",
            p(&out)
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "train",
            "--manifest",
            p(&m),
            "--loss",
            "ldam",
            "--out",
            p(&out)
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "train",
            "--manifest",
            p(&m),
            "--beta",
            "1.0",
            "--out",
            p(&out)
        ])
        .status
        .code(),
        Some(1)
    );
    let o = bin()
        .args(["stats", "--manifest", p(&m)])
        .env("CONTACTFORGE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn data_errors_exit_2_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["stats", "--manifest", p(&dir.path().join("missing.txt"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.txt"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "V=3 d=1 N=2\na;0.5;1,0,0\nb;0.5;1,2,0\n").unwrap();
    let o = run(&["stats", "--manifest", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.txt:3"), "{}", stderr(&o));

    let m = small_manifest(dir.path(), "1");
    let o = run(&[
        "sample",
        "--manifest",
        p(&m),
        "--out",
        p(&dir.path().join("no/such/dir/plan.csv")),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stats_reports_counts_ratio_and_regions() {
    let dir = tempfile::tempdir().unwrap();
    let m = small_manifest(dir.path(), "3");
    let o = run(&["stats", "--manifest", p(&m)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for key in [
        "N=300",
        "V=162",
        "d=16",
        "empty_samples=210",
        "imbalance_ratio=",
        "mean_contact[tip]=",
        "mean_contact[dorsal]=",
    ] {
        assert!(text.contains(key), "missing {key} in\n{text}");
    }
}

#[test]
fn pipeline_from_manifest_to_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let m = small_manifest(d, "2");
    let before = fs::read(&m).unwrap();
    let plan = d.join("plan.csv");
    let model = d.join("model.bin");
    let report = d.join("report.csv");

    let o = run(&[
        "sample",
        "--manifest",
        p(&m),
        "--total",
        "400",
        "--out",
        p(&plan),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&plan).unwrap().lines().count(), 401);

    let o = run(&[
        "train",
        "--manifest",
        p(&m),
        "--plan",
        p(&plan),
        "--steps",
        "400",
        "--loss",
        "bce",
        "--out",
        p(&model),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let value = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(value("final_loss=") < value("initial_loss="));

    let o = run(&[
        "eval",
        "--model",
        p(&model),
        "--manifest",
        p(&m),
        "--out",
        p(&report),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(&report).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "90");
    assert_eq!(row[4], "210");
    for metric in &row[..3] {
        let x: f64 = metric.parse().unwrap();
        assert!((0.0..=1.0).contains(&x));
    }

    let predicted = d.join("pred_heat.csv");
    let o = run(&[
        "export-heatmap",
        "--manifest",
        p(&m),
        "--model",
        p(&model),
        "--out",
        p(&predicted),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let values = heatmap(&predicted);
    assert_eq!(values.len(), 162);
    assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));

    assert_eq!(fs::read(&m).unwrap(), before, "input manifest was modified");
}

#[test]
fn heatmap_follows_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let m = small_manifest(dir.path(), "4");
    let out = dir.path().join("heat.csv");
    assert_eq!(
        run(&["export-heatmap", "--manifest", p(&m), "--out", p(&out)])
            .status
            .code(),
        Some(0)
    );
    let values = heatmap(&out);
    assert_eq!(values.len(), 162);
    // proxy mesh caps: the tip cap surrounds vertex 0 at +z, the dorsal cap vertex 11 at −z
    let proxy = contactforge::mesh::make_proxy_mesh(2).unwrap();
    let mean = |r: &[usize]| r.iter().map(|&v| values[v]).sum::<f64>() / r.len() as f64;
    assert!(mean(&proxy.tip_region) > mean(&proxy.dorsal_region));
}

#[test]
fn all_zero_dataset_gives_zero_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("zero.txt");
    fs::write(&m, "V=4 d=2 N=2\na;0.1,0.2;0,0,0,0\nb;0.3,0.4;0,0,0,0\n").unwrap();
    let out = dir.path().join("heat.csv");
    assert_eq!(
        run(&["export-heatmap", "--manifest", p(&m), "--out", p(&out)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(heatmap(&out), vec![0.0; 4]);
    let o = run(&[
        "stats",
        "--manifest",
        p(&m),
        "--mesh",
        p(&dir.path().join("absent.obj")),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = small_manifest(d, "5");
    let b = d.join("again.txt");
    run(&[
        "generate",
        "--samples",
        "300",
        "--seed",
        "5",
        "--out",
        p(&b),
    ]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let plans: Vec<Vec<u8>> = ["p1.csv", "p2.csv"]
        .iter()
        .map(|name| {
            let out = d.join(name);
            run(&[
                "sample",
                "--manifest",
                p(&a),
                "--seed",
                "9",
                "--out",
                p(&out),
            ]);
            fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(plans[0], plans[1]);
    let other = d.join("p3.csv");
    run(&[
        "sample",
        "--manifest",
        p(&a),
        "--seed",
        "10",
        "--out",
        p(&other),
    ]);
    assert_ne!(fs::read(other).unwrap(), plans[0]);
}

#[test]
fn ablate_and_compare_losses_on_small_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let table = d.join("ablate.csv");
    let o = run(&[
        "ablate",
        "--samples",
        "300",
        "--steps",
        "150",
        "--out",
        p(&table),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(&table).unwrap();
    assert!(csv
        .starts_with("sampling,loss,init,seed,precision,recall,f1,evaluated,skipped,train_loss\n"));
    assert_eq!(csv.lines().count(), 10);

    let m = small_manifest(d, "6");
    let cmp = d.join("cmp.csv");
    let o = run(&[
        "compare-losses",
        "--manifest",
        p(&m),
        "--losses",
        "bce,vcb",
        "--steps",
        "150",
        "--out",
        p(&cmp),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows: Vec<String> = fs::read_to_string(&cmp)
        .unwrap()
        .lines()
        .skip(1)
        .map(str::to_owned)
        .collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("on,bce,learned,1,"));
    assert!(rows[1].starts_with("on,vcb,learned,1,"));
    assert!(stdout(&o).contains("precision"));
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<Vec<u8>> = ["1", "0"]
        .iter()
        .map(|threads| {
            let out = dir.path().join(format!("t{threads}.csv"));
            let o = bin()
                .args([
                    "ablate",
                    "--samples",
                    "200",
                    "--steps",
                    "80",
                    "--out",
                    p(&out),
                ])
                .env("CONTACTFORGE_THREADS", threads)
                .output()
                .unwrap();
            assert_eq!(o.status.code(), Some(0));
            fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
}

fn write_obj(path: &Path, vertices: &[[f64; 3]], faces: &[[usize; 3]]) {
    let mut text = String::new();
    for v in vertices {
        text.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
    }
    for f in faces {
        text.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn label_thresholds_distance_to_the_object() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let hand = d.join("hand.obj");
    let object = d.join("object.obj");
    // hand vertices at heights 0.005, 0.01 and 0.02 m above a unit square
    write_obj(
        &hand,
        &[[0.0, 0.0, 0.005], [0.1, 0.0, 0.01], [0.0, 0.1, 0.02]],
        &[[0, 1, 2]],
    );
    write_obj(
        &object,
        &[
            [-1.0, -1.0, 0.0],
            [1.0, -1.0, 0.0],
            [1.0, 1.0, 0.0],
            [-1.0, 1.0, 0.0],
        ],
        &[[0, 1, 2], [0, 2, 3]],
    );
    let out = d.join("labels.csv");
    let o = run(&[
        "label",
        "--hand",
        p(&hand),
        "--other",
        p(&object),
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "vertex_index,contact\n0,1\n1,1\n2,0\n"
    );
    assert!(stdout(&o).contains("contact_vertices=2/3"));

    let o = run(&[
        "label",
        "--hand",
        p(&hand),
        "--object",
        p(&object),
        "--profile",
        "coarse",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "vertex_index,contact\n0,1\n1,1\n2,1\n"
    );

    let o = run(&[
        "label",
        "--hand",
        p(&hand),
        "--object",
        p(&object),
        "--threshold",
        "0.001",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("contact_vertices=0/3"));

    assert_eq!(
        run(&[
            "label",
            "--hand",
            p(&hand),
            "--object",
            p(&object),
            "--profile",
            "huge",
            "--out",
            p(&out)
        ])
        .status
        .code(),
        Some(1)
    );
}
