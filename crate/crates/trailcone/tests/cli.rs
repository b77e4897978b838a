use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;
use tempfile::TempDir;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

struct Run {
    code: i32,
    out: TempDir,
    stderr: String,
}

impl Run {
    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&std::fs::read_to_string(self.out.path().join(name)).unwrap()).unwrap()
    }

    fn text(&self, name: &str) -> String {
        std::fs::read_to_string(self.out.path().join(name)).unwrap()
    }
}

fn run_with(args: &[&str], config: &Path, envs: &[(&str, &Path)]) -> Run {
    let out = TempDir::new().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_trailcone"));
    cmd.args(args).arg("--config").arg(config).arg("--out").arg(out.path()).env_remove("TRAILCONE_CACHE");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let output = cmd.output().unwrap();
    Run { code: output.status.code().unwrap(), out, stderr: String::from_utf8_lossy(&output.stderr).into_owned() }
}

fn run(args: &[&str], config: &Path) -> Run {
    run_with(args, config, &[])
}

fn inline(json: &str) -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, json).unwrap();
    (dir, path)
}

#[test]
fn enumerate_a2() {
    let r = run(&["enumerate"], &configs().join("a2.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let dump = r.json("trails.json");
    let modules = dump["modules"].as_array().unwrap();
    assert_eq!(modules.len(), 1);
    assert_eq!(modules[0]["dim"], 3);
    assert_eq!(modules[0]["trails"][0]["function"], "1m1");
}

#[test]
fn enumerate_b2_finds_the_zero_weight_trail() {
    let r = run(&["enumerate"], &configs().join("b2.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let dump = r.json("trails.json");
    let modules = dump["modules"].as_array().unwrap();
    assert_eq!(modules.len(), 2, "no `t` means every node");
    assert_eq!(modules[0]["dim"], 5);
    assert_eq!(modules[0]["non_extremal"], 1);
    let odd = modules[0]["trails"].as_array().unwrap().iter().find(|k| k["extremal"] == false).unwrap();
    assert!(odd["weights"].as_array().unwrap().contains(&serde_json::json!([0, 0])));
}

#[test]
fn sgraph_from_coefficients() {
    let r = run(&["sgraph"], &configs().join("sgraph_231.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.text("sgraph.dot").matches(" [label=\"").count() - r.text("sgraph.dot").matches(" -- ").count(), 8);
    assert_eq!(r.json("sgraph.json")["vertices"].as_array().unwrap().len(), 8);

    let (_d, empty) = inline(r#"{"c": []}"#);
    let r = run(&["sgraph"], &empty);
    assert_eq!(r.text("sgraph.dot"), "graph sgraph {\n  v0 [label=\"1 | ()\"];\n}\n");

    let (_d, c32) = inline(r#"{"c": [3, 2]}"#);
    let lines = run(&["sgraph"], &c32).json("sgraph.json")["lines"].clone();
    assert_eq!(lines, serde_json::json!([{"u": 1, "counts": [2, 3, 4]}, {"u": 2, "counts": [3, 3, 2, 1]}]));
}

#[test]
fn sgraph_from_class_selector() {
    let r = run(&["sgraph"], &configs().join("sgraph_class.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let dump = r.json("sgraph.json");
    assert_eq!(dump["c"], serde_json::json!([1, 1]));
    assert_eq!(dump["source"], "class");
}

#[test]
fn verify_passes_on_a2_and_b2() {
    for name in ["a2.json", "b2.json"] {
        let r = run(&["verify"], &configs().join(name));
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        let report = r.json("verify.json");
        assert_eq!(report["exit_code"], 0);
        for suite in report["envelope"].as_array().unwrap() {
            assert_eq!(suite["source"], "constructed");
            assert_eq!(suite["matches_enumeration"], true);
            assert_eq!(suite["passes_57"], true);
            assert_eq!(suite["epsilon_star"]["s_dependent"], 0);
        }
    }
}

#[test]
fn first_letter_t_gives_a_single_function() {
    let r = run(&["verify", "--suite", "envelope"], &configs().join("a2.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let suite = &r.json("verify.json")["envelope"][0];
    for layer in suite["layers"]["layers"].as_array().unwrap() {
        for class in layer["classes"].as_array().unwrap() {
            assert_eq!(class["z_vertices"], serde_json::json!([{"1": 1}]));
        }
    }
    for row in suite["extremality"]["per_s"].as_array().unwrap() {
        assert_eq!(row["z_size"], 1);
        assert_eq!(row["equal"], true);
    }
}

#[test]
fn injected_function_exits_5_with_forensics() {
    let r = run(&["verify", "--suite", "envelope"], &configs().join("a2_injected.json"));
    assert_eq!(r.code, 5, "{}", r.stderr);
    let report = r.json("verify.json");
    let forensic = &report["false_trails"][0];
    assert_eq!(forensic["layer"], 2);
    assert_eq!(forensic["offending"], serde_json::json!({"1": 5, "2": -7, "3": 1}));
    assert!(forensic["nearest_block"].is_object());
    assert!(r.stderr.contains("\"layer\": 2"));
}

/// The adjoint module of G2 with the word starting at the short node has a
/// genuine class whose `T⁻` part is larger than `K⁻_Z(c)`.
#[test]
fn g2_adjoint_short_first_stops_at_layer_5() {
    let r = run(&["verify", "--suite", "envelope"], &configs().join("g2_short_first.json"));
    assert_eq!(r.code, 5, "{}", r.stderr);
    let report = r.json("verify.json");
    assert_eq!(report["false_trails"][0]["layer"], 5);
    assert_eq!(report["failures"], serde_json::json!([]));
    assert_eq!(report["envelope"][0]["source"], "enumeration");
    assert_eq!(report["envelope"][0]["epsilon_star"]["s_dependent"], 0);
}

#[test]
fn suites_can_be_selected() {
    let r = run(&["verify", "--suite", "sl2"], &configs().join("a2.json"));
    assert_eq!(r.code, 0);
    let report = r.json("verify.json");
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["exit_code", "failures", "false_trails", "sl2"]);
    assert_eq!(report["sl2"]["coefficient_mismatches"], 0);
}

#[test]
fn convention_and_depth_flags_reach_the_sweep() {
    let r = run(&["verify", "--suite", "envelope", "--depth", "3", "--convention", "straight"], &configs().join("b2.json"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let sweep = &r.json("verify.json")["envelope"][0]["epsilon_star"];
    assert_eq!(sweep["depth"], 3);
    assert_eq!(sweep["convention"], "straight");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (cmd, name, file) in
        [("verify", "g2.json", "verify.json"), ("enumerate", "b2.json", "trails.json"), ("sgraph", "sgraph_231.json", "sgraph.dot")]
    {
        let a = run(&[cmd], &configs().join(name));
        let b = run(&[cmd], &configs().join(name));
        assert_eq!(a.text(file), b.text(file), "{cmd} {name}");
    }
}

#[test]
fn module_cache_round_trip() {
    let cache = TempDir::new().unwrap();
    let config = configs().join("g2.json");
    let cold = run_with(&["enumerate"], &config, &[("TRAILCONE_CACHE", cache.path())]);
    assert_eq!(cold.code, 0, "{}", cold.stderr);
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 2);
    let warm = run_with(&["enumerate"], &config, &[("TRAILCONE_CACHE", cache.path())]);
    assert_eq!(cold.text("trails.json"), warm.text("trails.json"));
}

#[test]
fn configuration_errors() {
    let missing = run(&["enumerate"], Path::new("/nonexistent/job.json"));
    assert_eq!(missing.code, 2);
    for (json, needle) in [
        (r#"{"cartan": [[2,-1],[-1,2]], "word": [1, 1]}"#, "field `word`"),
        (r#"{"cartan": [[2,-1],[-1,2]], "t": 3}"#, "field `t`"),
        (r#"{"cartan": [[2,-1],[-1,2]"#, "job.json"),
        (r#"{"cartan": [[2,1],[-1,2]]}"#, "field `cartan`"),
        (r#"{"c": [1, -1]}"#, "field `c`"),
    ] {
        let (_d, path) = inline(json);
        let cmd = if json.contains("\"c\"") { "sgraph" } else { "enumerate" };
        let r = run(&[cmd], &path);
        assert_eq!(r.code, 2, "{json}");
        assert!(r.stderr.contains(needle), "{json}: {}", r.stderr);
    }
    let (_d, affine) = inline(r#"{"cartan": [[2,-2],[-2,2]]}"#);
    assert_eq!(run(&["verify"], &affine).code, 3);
}
