use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use multisect::diagram::MultisectionDiagram;
use multisect::io::{parse, serialize};
use multisect::surface::{CombinatorialMap, Curve};
use tempfile::TempDir;

fn msd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msd")).args(args).output().expect("msd runs")
}

fn ok(args: &[&str]) -> String {
    let out = msd(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn svg_groups(svg: &str, class: &str) -> usize {
    let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc.descendants().filter(|n| n.has_tag_name("g") && n.attribute("class") == Some(class)).count()
}

#[test]
fn sphere_bundle_invariants() {
    let dir = TempDir::new().unwrap();
    let d = path(&dir, "s.msd");
    ok(&["generate", "kind=sphere-bundle", "n=4", "g=0", "-o", &d]);
    let inv = ok(&["invariants", &d]);
    assert!(inv.starts_with("genus 3\nfamilies 4\ncurves 3 3 3 3\n"), "{inv}");
    assert!(ok(&["validate", &d]).starts_with("valid"));
}

#[test]
fn circle_bundle_pipeline() {
    let dir = TempDir::new().unwrap();
    let (b, s, d1, d2) = (path(&dir, "b.msd"), path(&dir, "s.msd"), path(&dir, "d1.msd"), path(&dir, "d2.msd"));
    let scheme = format!("scheme={}", fixture("cp2s1_alt.scheme"));
    ok(&["generate", "kind=circle-bundle", &format!("fiber={}", fixture("cp2.msd")), "sigma=id", &scheme, "-o", &b]);
    assert!(ok(&["invariants", &b]).starts_with("genus 7\n"));
    ok(&["move", &fixture("slides.txt"), &b, "-o", &s]);
    let found = ok(&["find-destab", &s]);
    let count: usize = found.lines().next().unwrap().strip_prefix("witnesses ").unwrap().parse().unwrap();
    assert!(count >= 1, "{found}");
    ok(&["destab", &s, "-o", &d1]);
    ok(&["destab", &d1, "-o", &d2]);
    assert!(ok(&["invariants", &d2]).starts_with("genus 5\nfamilies 4\n"));
    assert!(ok(&["validate", &d2]).starts_with("valid"));
    assert!(ok(&["find-destab", &d2]).starts_with("witnesses 0"));
}

#[test]
fn reflection_bundle_from_files() {
    let phi = format!("phi={}", fixture("cp2_reflection.phi"));
    let text = ok(&["generate", "kind=circle-bundle", &format!("fiber={}", fixture("cp2.msd")), "sigma=(13)", &phi]);
    assert!(parse(&text).unwrap().is_valid());
    assert_eq!(parse(&text).unwrap().genus(), 6);
}

/// `d` with dart `x` renamed to `perm[x]`.
fn relabel(d: &MultisectionDiagram, perm: &[usize]) -> MultisectionDiagram {
    let n = perm.len();
    let (mut alpha, mut rot) = (vec![0; n], vec![0; n]);
    for x in 0..n {
        alpha[perm[x]] = perm[d.map.alpha(x)];
        rot[perm[x]] = perm[d.map.rot(x)];
    }
    let families = d.families.iter().map(|f| f.iter().map(|c| Curve::new(c.darts.iter().map(|&x| perm[x]).collect())).collect()).collect();
    MultisectionDiagram { map: CombinatorialMap::new(alpha, rot).unwrap(), families, labels: d.labels.clone(), meta: d.meta.clone() }
}

fn write_relabeled(src: &str, dst: &Path) {
    let d = parse(&fs::read_to_string(src).unwrap()).unwrap();
    let n = d.map.num_darts();
    let perm: Vec<usize> = (0..n).map(|x| (x * 5 + 3) % n).collect();
    assert!(n % 5 != 0);
    let e = relabel(&d, &perm);
    // written by hand in the permuted numbering, not canonically
    let mut text = format!("msd 1\ndarts {n}\n");
    for x in (0..n).filter(|&x| x < e.map.alpha(x)) {
        text += &format!("alpha {x} {}\n", e.map.alpha(x));
    }
    for v in 0..e.map.num_vertices() {
        let ds: Vec<String> = e.map.vertex_darts(v).iter().map(|x| x.to_string()).collect();
        text += &format!("rot {}\n", ds.join(" "));
    }
    for (i, f) in e.families.iter().enumerate() {
        text += &format!("family {}\n", i + 1);
        for c in f {
            let ds: Vec<String> = c.darts.iter().map(|x| x.to_string()).collect();
            text += &format!("curve {}\n", ds.join(" "));
        }
        text += "end\n";
    }
    fs::write(dst, text).unwrap();
}

#[test]
fn iso_and_canonical_output() {
    let dir = TempDir::new().unwrap();
    let cp2 = fixture("cp2.msd");
    let moved = dir.path().join("moved.msd");
    write_relabeled(&cp2, &moved);
    let moved = moved.display().to_string();
    assert_ne!(fs::read_to_string(&moved).unwrap(), fs::read_to_string(&cp2).unwrap());
    assert_eq!(ok(&["iso", &cp2, &moved]).trim(), "isomorphic");
    // re-serializing gives the canonical text back
    let again = path(&dir, "again.msd");
    ok(&["move", &write_empty_script(&dir), &moved, "-o", &again]);
    let canon = serialize(&parse(&fs::read_to_string(&moved).unwrap()).unwrap());
    assert_eq!(fs::read_to_string(&again).unwrap(), canon);
    assert_eq!(ok(&["iso", &cp2, &again]).trim(), "isomorphic");
    let s2s2 = fixture("s2s2.msd");
    assert_eq!(msd(&["iso", &cp2, &s2s2]).status.code(), Some(1));
}

fn write_empty_script(dir: &TempDir) -> String {
    let p = path(dir, "empty.txt");
    fs::write(&p, "# no moves\n").unwrap();
    p
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(msd(&["--help"]).status.code(), Some(0));
    assert_eq!(msd(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(msd(&["generate", "kind=nonsense"]).status.code(), Some(1));
    assert_eq!(msd(&["generate", "kind=gen1-sphere", "n=3", "k=3"]).status.code(), Some(1));
    assert_eq!(msd(&["validate", &path(&dir, "missing.msd")]).status.code(), Some(1));

    let text = fs::read_to_string(fixture("cp2.msd")).unwrap();
    let truncated = path(&dir, "truncated.msd");
    fs::write(&truncated, text.lines().take_while(|l| *l != "end").collect::<Vec<_>>().join("\n")).unwrap();
    let out = msd(&["validate", &truncated]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    // a family with one curve dropped is no longer a cut system
    let mut lines: Vec<&str> = text.lines().collect();
    let first_curve = lines.iter().position(|l| l.starts_with("curve")).unwrap();
    lines.remove(first_curve);
    let short = path(&dir, "short.msd");
    fs::write(&short, lines.join("\n")).unwrap();
    assert_eq!(msd(&["validate", &short]).status.code(), Some(2));
    assert_eq!(msd(&["destab", &short, "-w", "9"]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    let runs: [&[&str]; 4] = [
        &["generate", "kind=sphere-bundle", "n=5", "g=1"],
        &["generate", "kind=scheme", "n=6", "sigma=(12)(345)"],
        &["generate", "kind=goodball", "base=rpn", "n=3", "g=1"],
        &["generate", "kind=w-twist", "m=3"],
    ];
    for args in runs {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
    let cp2 = fixture("cp2.msd");
    assert_eq!(ok(&["render", &cp2]), ok(&["render", &cp2]));
    assert_eq!(ok(&["find-destab", &cp2]), ok(&["find-destab", &cp2]));
}

#[test]
fn render_structure() {
    let dir = TempDir::new().unwrap();
    let svg = ok(&["render", &fixture("cp2s1_alt.scheme")]);
    assert_eq!(svg_groups(&svg, "cell"), 3 * 7);
    let scheme = path(&dir, "s.scheme");
    ok(&["generate", "kind=scheme", "n=4", "sigma=(123)", "-o", &scheme]);
    assert_eq!(svg_groups(&ok(&["render", &scheme]), "cell"), 3 * 5);

    let b = path(&dir, "b.msd");
    ok(&["generate", "kind=circle-bundle", &format!("fiber={}", fixture("cp2.msd")), "sigma=id", "-o", &b]);
    assert_eq!(svg_groups(&ok(&["render", &b]), "panel"), 6);
    let s = path(&dir, "sphere.msd");
    ok(&["generate", "kind=sphere-bundle", "n=4", "g=0", "-o", &s]);
    assert_eq!(svg_groups(&ok(&["render", &s]), "panel"), 2);
}
