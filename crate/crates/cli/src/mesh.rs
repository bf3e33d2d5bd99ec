//! Icosphere sampling of form surfaces and Wavefront OBJ export.

use std::collections::HashMap;
use std::io::{self, Write};

use ternary_invariants::NumericForm;

/// Material of faces where the form is nonnegative.
pub const POSITIVE: &str = "positive";
/// Material of faces where the form is negative.
pub const NEGATIVE: &str = "negative";

/// The surface `{f(u)·u}` over the vertices of a subdivided icosahedron.
#[derive(Clone, Debug)]
pub struct MeshSample {
    /// `f(u)·u` for each sphere direction `u`.
    pub vertices: Vec<[f64; 3]>,
    /// Counter-clockwise index triples on the sphere.
    pub faces: Vec<[usize; 3]>,
    /// `f(u)` per vertex.
    pub scalar: Vec<f64>,
}

impl MeshSample {
    pub fn sample(f: &NumericForm, subdiv: u32) -> Self {
        let (directions, faces) = icosphere(subdiv);
        let scalar: Vec<f64> = directions.iter().map(|u| f.evaluate(*u)).collect();
        let vertices = directions
            .iter()
            .zip(&scalar)
            .map(|(u, s)| u.map(|c| c * s))
            .collect();
        MeshSample {
            vertices,
            faces,
            scalar,
        }
    }

    /// Whether the mean of the form over the face's vertices is negative.
    pub fn face_is_negative(&self, face: &[usize; 3]) -> bool {
        face.iter().map(|&v| self.scalar[v]).sum::<f64>() < 0.0
    }

    /// Writes vertices and faces, grouped into the two sign materials. Negative
    /// faces are reflected through the origin by the scaling, so their winding
    /// is reversed to keep normals pointing away from it.
    pub fn write_obj(&self, w: &mut impl Write, mtllib: Option<&str>) -> io::Result<()> {
        if let Some(lib) = mtllib {
            writeln!(w, "mtllib {lib}")?;
        }
        for v in &self.vertices {
            writeln!(w, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2])?;
        }
        for (material, negative) in [(POSITIVE, false), (NEGATIVE, true)] {
            writeln!(w, "g {material}")?;
            writeln!(w, "usemtl {material}")?;
            for face in self
                .faces
                .iter()
                .filter(|f| self.face_is_negative(f) == negative)
            {
                let [a, b, c] = face.map(|i| i + 1);
                if negative {
                    writeln!(w, "f {a} {c} {b}")?;
                } else {
                    writeln!(w, "f {a} {b} {c}")?;
                }
            }
        }
        Ok(())
    }
}

/// Material library for the two sign groups.
pub fn write_mtl(w: &mut impl Write) -> io::Result<()> {
    for (name, rgb) in [(POSITIVE, [0.85, 0.25, 0.2]), (NEGATIVE, [0.2, 0.4, 0.85])] {
        writeln!(w, "newmtl {name}")?;
        writeln!(w, "Kd {} {} {}", rgb[0], rgb[1], rgb[2])?;
        writeln!(w)?;
    }
    Ok(())
}

/// Unit vertices and counter-clockwise faces of the icosahedron subdivided
/// `subdiv` times (`10·4ⁿ + 2` vertices, `20·4ⁿ` faces).
pub fn icosphere(subdiv: u32) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .into_iter()
    .map(normalize)
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdiv {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<[f64; 3]>| {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (vertices[a], vertices[b]);
                vertices.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    (vertices, faces)
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    p.map(|c| c / n)
}
