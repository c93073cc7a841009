//! The files under `fixtures/` are the builtin fixtures written out.

use std::fs;
use std::path::PathBuf;

use multisect::bundle::{circle_bundle_diagram, Monodromy, Scheme};
use multisect::diagram::SlideScript;
use multisect::fixtures::{cp2, cp2_reflection, s2s2, CP2S1_ALT_SCHEME, CP2S1_SLIDES};
use multisect::io::{parse_valid, serialize};

fn read(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn diagrams_match_builtins() {
    for (file, d) in [("cp2.msd", cp2()), ("s2s2.msd", s2s2())] {
        let text = read(file);
        assert_eq!(text, serialize(&d), "{file}");
        assert!(parse_valid(&text).unwrap().isomorphic(&d, false));
    }
}

#[test]
fn scheme_and_script_match_builtins() {
    assert_eq!(read("cp2s1_alt.scheme"), CP2S1_ALT_SCHEME);
    assert_eq!(read("slides.txt"), CP2S1_SLIDES);
    let s = Scheme::parse(&read("cp2s1_alt.scheme")).unwrap();
    assert!(s.is_valid());
    assert_eq!(s.missing_sequence(), vec![1, 2, 3, 4, 3, 2]);
    assert_eq!(SlideScript::parse(&read("slides.txt")).unwrap(), SlideScript::parse(CP2S1_SLIDES).unwrap());
}

#[test]
fn reflection_file_is_an_automorphism_of_the_file_fiber() {
    let fiber = parse_valid(&read("cp2.msd")).unwrap();
    let phi: Vec<usize> = read("cp2_reflection.phi").split_whitespace().map(|w| w.parse().unwrap()).collect();
    let mono = Monodromy { sigma: cp2_reflection().sigma, phi };
    assert_eq!(mono.check(&fiber), Ok(true));
}

#[test]
fn file_pipeline_builds_the_product() {
    let fiber = parse_valid(&read("cp2.msd")).unwrap();
    let s = Scheme::parse(&read("cp2s1_alt.scheme")).unwrap();
    let d = circle_bundle_diagram(&fiber, &Monodromy::identity(&fiber), &s).unwrap();
    assert!(d.is_valid());
    assert_eq!(d.genus(), 7);
}
