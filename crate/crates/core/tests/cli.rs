use std::process::Command;

const NU_STAR: &str = "1/5,2/5,-3/5,1/7,2/7,-3/7,1/2,5/6,2/3";
const NU_GENERIC: &str = "1/5,3/10,-1/2,1/7,2/7,-3/7,1/2,5/6,2/3";

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_a2wc"))
        .args(args)
        .env_remove("A2WC_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn act_s1_on_the_fixture() {
    let (code, out, _) = run(&["act", "--word", "s1", "--nu", NU_STAR, "--point", "2,3,1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["output"]["q"], "-1");
    assert_eq!(v["output"]["p"], "-3");
    assert_eq!(v["output"]["nu"][0][0], "1/7");
}

#[test]
fn mc_and_surface_agree() {
    let (code, out, _) = run(&["mc", "--nu", NU_GENERIC, "--q", "2", "--p", "3"]);
    assert_eq!(code, 0);
    let mc = json(&out);
    let (code, out, _) = run(&["act", "--word", "w3", "--via", "surface", "--nu", NU_GENERIC, "--q", "2", "--p", "3"]);
    assert_eq!(code, 0);
    let act = json(&out);
    assert_eq!(mc["result"]["qbar"], act["output"]["q"]);
    assert_eq!(mc["result"]["pbar"], act["output"]["p"]);
}

#[test]
fn mc_outside_n00_is_a_typed_error() {
    let (code, out, _) = run(&["mc", "--nu", NU_STAR, "--q", "2", "--p", "3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["code"], "not_in_n00");
}

#[test]
fn orbit_with_zero_steps() {
    let (code, out, _) = run(&["orbit", "--word", "s1", "--steps", "0", "--nu", NU_GENERIC, "--q", "2", "--p", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("step,x0,x1,x2,q,p,nu_0_0"));
    assert_eq!(lines[1].split(',').count(), 15);
}

#[test]
fn malformed_input_exits_2_and_names_the_field() {
    let (code, _, err) = run(&["act", "--word", "w1", "--nu", "1/5,2/5,x,1,1,1,1,1,1", "--q", "2", "--p", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--nu"), "{err}");
    let (code, _, err) = run(&["act", "--word", "w7", "--nu", NU_STAR, "--q", "2", "--p", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--word"), "{err}");
    let (code, _, err) = run(&["act", "--word", "w1", "--nu", NU_STAR, "--point", "0,1,1"]);
    assert_eq!(code, 2);
    assert_eq!(json(&err)["error"]["code"], "on_triangle");
    let (code, _, _) = run(&["check", "--suite", "nope"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn coxeter_check_is_quick_and_green() {
    let (code, out, _) = run(&["check", "--suite", "coxeter"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    assert!(v["resolved_deviations"].as_array().unwrap().len() >= 3);
}

#[test]
fn environment_seed_sets_the_default_only() {
    let exe = env!("CARGO_BIN_EXE_a2wc");
    let seeded = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(exe);
        c.args(["check", "--suite", "cubic", "--trials", "2"]);
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        match env {
            Some(e) => c.env("A2WC_SEED", e),
            None => c.env_remove("A2WC_SEED"),
        };
        json(&String::from_utf8(c.output().unwrap().stdout).unwrap())["seed"].clone()
    };
    assert_eq!(seeded(None, None), 0);
    assert_eq!(seeded(Some("9"), None), 9);
    assert_eq!(seeded(Some("9"), Some("4")), 4);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("a2wc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("act.json");
    let (code, out, _) = run(&["act", "--word", "s2", "--nu", NU_STAR, "--q", "2", "--p", "3", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["command"], "act");
    std::fs::remove_dir_all(dir).unwrap();
}
