//! Document format contracts: canonical byte-identical round trips, the
//! checked-in fixtures staying in sync with the library samples, positioned
//! parse errors, and independent solution checking.

use std::path::PathBuf;
use steiner_embed::samples;
use steiner_embed::scaling::{solve, SolveConfig, SolveMode};
use steiner_embed_cli::formats::{
    check_solution, instance_to_doc, parse_instance, parse_solution, render_report,
    serialize_instance, serialize_solution, solution_from_report,
};
use steiner_embed_cli::generate::{gen_random, GenSpec};
use steiner_embed_cli::CliError;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name)
}

#[test]
fn fixtures_match_the_library_samples() {
    for (file, inst) in [
        ("f1.json", samples::demo_net_small()),
        ("f2.json", samples::demo_net_large()),
        ("f3.json", samples::component_demo_net()),
    ] {
        let on_disk = std::fs::read_to_string(fixture_path(file)).unwrap();
        let canonical = serialize_instance(&instance_to_doc(&inst));
        assert_eq!(on_disk, canonical, "{file} drifted from the sample");
    }
}

#[test]
fn canonical_documents_round_trip_byte_identically() {
    let mut docs = vec![
        instance_to_doc(&samples::demo_net_small()),
        instance_to_doc(&samples::demo_net_large()),
        instance_to_doc(&samples::component_demo_net()),
    ];
    for seed in 0..10 {
        let spec = GenSpec {
            n_terminals: 5,
            coord_range: 8,
            restricted_fraction: 0.5,
            slack: 2,
            seed,
        };
        docs.push(instance_to_doc(&gen_random(&spec).unwrap()));
    }
    for doc in docs {
        let text = serialize_instance(&doc);
        let again = serialize_instance(&instance_to_doc(&parse_instance(&text).unwrap()));
        assert_eq!(text, again);
    }
}

#[test]
fn small_fixture_parses_to_twelve_vertices() {
    let text = std::fs::read_to_string(fixture_path("f1.json")).unwrap();
    let inst = parse_instance(&text).unwrap();
    assert_eq!(inst.len(), 12);
    assert_eq!(inst.terminal_indices().len(), 7);
    assert_eq!(inst.edges().len(), 11);
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = parse_instance("{\n  \"name\": oops\n}").unwrap_err();
    match err {
        CliError::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
        other => panic!("wrong error: {other}"),
    }
}

#[test]
fn structural_errors_are_rejected_at_parse_level() {
    // A cycle among the Steiner vertices: still n-1 edges won't hold, and
    // the vertex count check plus connectivity reporting fires.
    let cyclic = r#"{
  "name": "loop",
  "root": "r",
  "vertices": ["a", "b", "r"],
  "edges": [["a", "b"], ["b", "r"], ["a", "r"]],
  "terminals": [{"id": "r", "x": 0, "y": 0, "limit": null}]
}"#;
    match parse_instance(cyclic).unwrap_err() {
        CliError::Invalid(msg) => assert!(msg.contains("edges"), "{msg}"),
        other => panic!("wrong error: {other}"),
    }

    let unknown = r#"{
  "name": "ghost",
  "root": "r",
  "vertices": ["r"],
  "edges": [["r", "x"]],
  "terminals": [{"id": "r", "x": 0, "y": 0, "limit": null}]
}"#;
    match parse_instance(unknown).unwrap_err() {
        CliError::Parse(msg) => assert!(msg.contains('x'), "{msg}"),
        other => panic!("wrong error: {other}"),
    }

    let dupe = r#"{
  "name": "twice",
  "root": "r",
  "vertices": ["r", "r"],
  "edges": [],
  "terminals": [{"id": "r", "x": 0, "y": 0, "limit": null}]
}"#;
    assert!(parse_instance(dupe).is_err());

    let rootless = r#"{
  "name": "adrift",
  "root": "s",
  "vertices": ["s", "t"],
  "edges": [["s", "t"]],
  "terminals": [{"id": "t", "x": 1, "y": 0, "limit": null}]
}"#;
    assert!(parse_instance(rootless).is_err());
}

#[test]
fn unknown_document_fields_are_rejected() {
    let extra = r#"{
  "name": "x",
  "root": "r",
  "vertices": ["r"],
  "edges": [],
  "terminals": [{"id": "r", "x": 0, "y": 0, "limit": null}],
  "comment": "not part of the grammar"
}"#;
    assert!(matches!(parse_instance(extra).unwrap_err(), CliError::Parse(_)));
}

fn solved_f1() -> (steiner_embed::model::Instance, steiner_embed::scaling::SolveReport) {
    let inst = samples::demo_net_small();
    let report = solve(&inst, &SolveConfig::default()).unwrap();
    (inst, report)
}

#[test]
fn solution_documents_round_trip_and_check_out() {
    let (inst, report) = solved_f1();
    let doc = solution_from_report(&inst, SolveMode::Practical, &report);
    assert_eq!(doc.cost2, 24);
    let ids: Vec<&str> = doc.vertices.iter().map(|v| v.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "solution vertices are sorted by id");

    let text = serialize_solution(&doc);
    let parsed = parse_solution(&text).unwrap();
    assert_eq!(parsed, doc);
    assert_eq!(serialize_solution(&parsed), text);

    let summary = check_solution(&inst, &parsed).unwrap();
    assert_eq!(summary.cost2, 24);
    assert!(summary.feasible);
    assert_eq!(summary.levels, 3);
}

#[test]
fn check_rejects_any_tampering() {
    let (inst, report) = solved_f1();
    let doc = solution_from_report(&inst, SolveMode::Practical, &report);

    let mut wrong_cost = doc.clone();
    wrong_cost.cost2 += 2;
    assert!(matches!(check_solution(&inst, &wrong_cost), Err(CliError::Mismatch(_))));

    let mut moved_terminal = doc.clone();
    let t1 = moved_terminal.vertices.iter_mut().find(|v| v.id == "t1").unwrap();
    t1.x2 += 2;
    assert!(matches!(check_solution(&inst, &moved_terminal), Err(CliError::Mismatch(_))));

    let mut wrong_path = doc.clone();
    wrong_path.paths[1].length2 += 2;
    assert!(matches!(check_solution(&inst, &wrong_path), Err(CliError::Mismatch(_))));

    let mut lied_feasible = doc.clone();
    lied_feasible.feasible = false;
    assert!(matches!(check_solution(&inst, &lied_feasible), Err(CliError::Mismatch(_))));

    let mut wrong_instance = doc;
    wrong_instance.instance = "somewhere-else".to_string();
    assert!(matches!(check_solution(&inst, &wrong_instance), Err(CliError::Mismatch(_))));
}

#[test]
fn generation_is_seed_deterministic() {
    let spec = GenSpec {
        n_terminals: 7,
        coord_range: 6,
        restricted_fraction: 0.4,
        slack: 2,
        seed: 99,
    };
    let a = serialize_instance(&instance_to_doc(&gen_random(&spec).unwrap()));
    let b = serialize_instance(&instance_to_doc(&gen_random(&spec).unwrap()));
    assert_eq!(a, b);
    let other = GenSpec { seed: 100, ..spec };
    let c = serialize_instance(&instance_to_doc(&gen_random(&other).unwrap()));
    assert_ne!(a, c, "different seeds should give different instances");
}

#[test]
fn generation_honors_the_restriction_knobs() {
    let unrestricted = GenSpec {
        n_terminals: 9,
        coord_range: 5,
        restricted_fraction: 0.0,
        slack: 3,
        seed: 7,
    };
    let inst = gen_random(&unrestricted).unwrap();
    let doc = instance_to_doc(&inst);
    assert!(doc.terminals.iter().all(|t| t.limit.is_none()));

    // Zero slack forces every budgeted path to the straight root distance.
    let tight = GenSpec {
        n_terminals: 8,
        coord_range: 4,
        restricted_fraction: 1.0,
        slack: 0,
        seed: 11,
    };
    let inst = gen_random(&tight).unwrap();
    let report = solve(&inst, &SolveConfig::default()).unwrap();
    let root = inst.root_position();
    for &v in inst.terminal_indices() {
        if v == inst.root() {
            continue;
        }
        let t = inst.terminal(v).unwrap();
        assert_eq!(report.path_lengths[inst.id(v)], t.position.l1(root));
        assert_eq!(t.limit.value().unwrap(), t.position.l1(root));
    }
}

#[test]
fn generation_rejects_bad_specs() {
    let base = GenSpec {
        n_terminals: 5,
        coord_range: 5,
        restricted_fraction: 0.5,
        slack: 1,
        seed: 0,
    };
    assert!(gen_random(&GenSpec { n_terminals: 1, ..base }).is_err());
    assert!(gen_random(&GenSpec { restricted_fraction: 1.5, ..base }).is_err());
    assert!(gen_random(&GenSpec { slack: -1, ..base }).is_err());
    assert!(gen_random(&GenSpec { coord_range: -3, ..base }).is_err());
}

#[test]
fn generated_steiner_vertices_have_degree_three_and_the_root_is_a_leaf() {
    for seed in 0..20 {
        let spec = GenSpec {
            n_terminals: 3 + (seed as usize % 7),
            coord_range: 5,
            restricted_fraction: 0.5,
            slack: 2,
            seed,
        };
        let inst = gen_random(&spec).unwrap();
        let mut degree = vec![0usize; inst.len()];
        for &(a, b) in inst.edges() {
            degree[a] += 1;
            degree[b] += 1;
        }
        assert_eq!(degree[inst.root()], 1, "the root hangs off the tree as a leaf");
        for (v, &d) in degree.iter().enumerate() {
            if !inst.is_terminal(v) {
                assert_eq!(d, 3, "Steiner vertex {}", inst.id(v));
            }
        }
        assert_eq!(
            inst.len(),
            2 * inst.terminal_indices().len() - 2,
            "binary shape pins the vertex count"
        );
    }
}

#[test]
fn reports_list_every_level_and_budget() {
    let (inst, report) = solved_f1();
    let text = render_report(&inst, SolveMode::Practical, &report);
    assert!(text.contains("final cost2 24 feasible true"));
    assert!(text.contains("t1: 10 of 10 (slack 0)"));
    assert!(text.contains("u1: 6 (unbounded)"));
    assert!(text.matches("\n  ").count() >= report.levels.len());
    let again = render_report(&inst, SolveMode::Practical, &report);
    assert_eq!(text, again, "reports are deterministic");
}
