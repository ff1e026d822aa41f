use std::process::{Command, Output};

fn superchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superchar"))
        .args(args)
        .env_remove("SUPERCHAR_MAX_HEIGHT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kl_of_two_path_example() {
    let o = superchar(&["kl", "--from", "3,2,1|1,2,3", "--to", "7,5,4|4,5,7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^8 + q^10");
}

#[test]
fn paths_lists_words_lengths_and_sigmas() {
    let o = superchar(&["paths", "--from", "3,2,1|1,2,3", "--to", "7,5,4|4,5,7"]);
    let text = stdout(&o);
    assert!(text.contains("R1^3 R2^3 R3^2 | 8 | (2 3)"), "{text}");
    assert!(text.contains("| 10 | id"), "{text}");
    assert!(text.ends_with("2 paths\n"));
}

#[test]
fn verify_sample_weight() {
    let o = superchar(&["verify", "--weight", "10,9,8,5,4|1,4,6,8,10", "--height", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert_eq!(v["t_lambda"], 2);
}

#[test]
fn standard_module_dimension() {
    let o = superchar(&["char", "--weight", "1,-1|-1", "--height", "6", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dim 3"), "{text}");
    assert!(text.contains("agree"));

    let o = superchar(&["char", "--weight", "1,-1|-1", "--height", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn diagram_text_and_json() {
    let o = superchar(&["diagram", "10,9,8,5,4|1,4,6,8,10"]);
    let text = stdout(&o);
    assert!(text.contains("caps: (10,11) (8,12) (4,7)"), "{text}");
    assert!(text.contains("flags: PDC, not TC, not TDC"));

    let o = superchar(&["diagram", "10,9,8,5,4|1,4,6,8,10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["caps"], serde_json::json!([[10, 11], [8, 12], [4, 7]]));
    assert_eq!(v["symbols"]["4"], "vee");
    assert_eq!(v["window"][0], 0);

    let o = superchar(&["diagram", "4,2,1|1,2,4"]);
    assert!(stdout(&o).contains("flags: not PDC"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(superchar(&["diagram", "bad"]).status.code(), Some(2));
    assert_eq!(superchar(&["diagram", "1,2|3"]).status.code(), Some(2));
    assert_eq!(superchar(&["kl", "--from", "3,2,1|1,2,3"]).status.code(), Some(2));
    assert_eq!(superchar(&["corpus", "2,2,4,1"]).status.code(), Some(2));
    assert_eq!(superchar(&["verify", "--weight", "7,5,4|4,5,7"]).status.code(), Some(2));
    let o = superchar(&["diagram", "bad"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at byte"));
}

#[test]
fn corpus_lists_adjoint_as_tdc() {
    let o = superchar(&["corpus", "2,2,1,4"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 36);
    assert!(text.lines().any(|l| l == "3,1|1,3\tPDC, not TC, TDC"), "{text}");
}

#[test]
fn verify_corpus_is_order_stable() {
    let one = superchar(&["verify", "--corpus", "2,1,0,3", "--height", "5", "--jobs", "1"]);
    let many = superchar(&["verify", "--corpus", "2,1,0,3", "--height", "5", "--jobs", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&many));
    assert!(stdout(&one).lines().count() > 5);
}

#[test]
fn lemma_report() {
    let o = superchar(&["verify", "--lemma", "lexi-sum", "--weight", "10,9,8,5,4|1,4,6,8,10", "--height", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["lemma"], "lexi-sum");
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(superchar(&["verify", "--lemma", "nope", "--weight", "3,1|1,3"]).status.code(), Some(2));
}

#[test]
fn unshifted_input_and_env_height() {
    // gl(2|1) trivial module: λ = 0
    let o = superchar(&["char", "--weight", "0,0|0", "--unshifted"]);
    assert!(stdout(&o).contains("dim 1"));
    // gl(1|1) has half-integral ρ
    let o = superchar(&["char", "--weight", "0|0", "--unshifted"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("add 1/2"));

    let o = Command::new(env!("CARGO_BIN_EXE_superchar"))
        .args(["char", "--weight", "1|1", "--method", "paths", "--json"])
        .env("SUPERCHAR_MAX_HEIGHT", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["height"], 3);
}
