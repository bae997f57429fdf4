//! ASCII OBJ and PLY export, plus the matching readers.

use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::Point3;

use super::TriangleMesh;

pub fn write_obj<W: Write>(mesh: &TriangleMesh, mut w: W) -> Result<()> {
    writeln!(w, "# reuleaux triangle mesh")?;
    writeln!(
        w,
        "# {} vertices, {} triangles",
        mesh.vertices.len(),
        mesh.triangles.len()
    )?;
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", v.x, v.y, v.z)?;
    }
    for t in &mesh.triangles {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ply<W: Write>(mesh: &TriangleMesh, mut w: W) -> Result<()> {
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "element vertex {}", mesh.vertices.len())?;
    writeln!(w, "property double x")?;
    writeln!(w, "property double y")?;
    writeln!(w, "property double z")?;
    writeln!(w, "element face {}", mesh.triangles.len())?;
    writeln!(w, "property list uchar int vertex_indices")?;
    writeln!(w, "end_header")?;
    for v in &mesh.vertices {
        writeln!(w, "{} {} {}", v.x, v.y, v.z)?;
    }
    for t in &mesh.triangles {
        writeln!(w, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_obj(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    write_obj(mesh, BufWriter::new(File::create(path)?))
}

pub fn export_ply(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    write_ply(mesh, BufWriter::new(File::create(path)?))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_f64(s: Option<&str>) -> Result<f64> {
    s.ok_or_else(|| bad("missing coordinate"))?
        .parse()
        .map_err(|_| bad("bad coordinate"))
}

fn parse_u32(s: Option<&str>) -> Result<u32> {
    s.ok_or_else(|| bad("missing index"))?
        .parse()
        .map_err(|_| bad("bad index"))
}

/// Read triangles and vertices from an OBJ stream (`v` and `f` records only;
/// `f a/b/c` forms keep the vertex index).
pub fn read_obj<R: BufRead>(r: R) -> Result<TriangleMesh> {
    let mut mesh = TriangleMesh::default();
    for line in r.lines() {
        let line = line?;
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let x = parse_f64(it.next())?;
                let y = parse_f64(it.next())?;
                let z = parse_f64(it.next())?;
                mesh.vertices.push(Point3::new(x, y, z));
            }
            Some("f") => {
                let idx: Vec<u32> = it
                    .map(|s| parse_u32(s.split('/').next()))
                    .collect::<Result<_>>()?;
                if idx.len() != 3 || idx.contains(&0) {
                    return Err(bad("only 1-based triangles are supported"));
                }
                mesh.triangles.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
            }
            _ => {}
        }
    }
    Ok(mesh)
}

/// Read an ASCII PLY stream with `vertex` (x, y, z first) and triangle `face` elements.
pub fn read_ply<R: BufRead>(r: R) -> Result<TriangleMesh> {
    let mut lines = r.lines();
    let mut next = || -> Result<String> {
        lines
            .next()
            .ok_or_else(|| bad("unexpected end of PLY"))?
            .map_err(Error::from)
    };
    if next()?.trim() != "ply" {
        return Err(bad("missing ply magic"));
    }
    let (mut nv, mut nf) = (0usize, 0usize);
    loop {
        let line = next()?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["format", fmt, ..] if *fmt != "ascii" => return Err(bad("only ascii PLY is supported")),
            ["element", "vertex", n] => nv = n.parse().map_err(|_| bad("bad vertex count"))?,
            ["element", "face", n] => nf = n.parse().map_err(|_| bad("bad face count"))?,
            ["end_header"] => break,
            _ => {}
        }
    }
    let mut mesh = TriangleMesh::default();
    for _ in 0..nv {
        let line = next()?;
        let mut it = line.split_whitespace();
        let x = parse_f64(it.next())?;
        let y = parse_f64(it.next())?;
        let z = parse_f64(it.next())?;
        mesh.vertices.push(Point3::new(x, y, z));
    }
    for _ in 0..nf {
        let line = next()?;
        let mut it = line.split_whitespace();
        if parse_u32(it.next())? != 3 {
            return Err(bad("only triangle faces are supported"));
        }
        mesh.triangles
            .push([parse_u32(it.next())?, parse_u32(it.next())?, parse_u32(it.next())?]);
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::icosphere;

    #[test]
    fn empty_mesh_is_header_only() {
        let mut obj = Vec::new();
        write_obj(&TriangleMesh::default(), &mut obj).unwrap();
        let text = String::from_utf8(obj).unwrap();
        assert!(text.lines().all(|l| l.starts_with('#')));
        let mut ply = Vec::new();
        write_ply(&TriangleMesh::default(), &mut ply).unwrap();
        let text = String::from_utf8(ply).unwrap();
        assert!(text.ends_with("end_header\n"));
        assert!(text.contains("element vertex 0"));
    }

    #[test]
    fn round_trips_are_exact() {
        let m = icosphere(3);
        let mut obj = Vec::new();
        write_obj(&m, &mut obj).unwrap();
        assert_eq!(read_obj(&obj[..]).unwrap(), m);
        let mut ply = Vec::new();
        write_ply(&m, &mut ply).unwrap();
        let text = String::from_utf8(ply.clone()).unwrap();
        assert!(text.contains(&format!("element face {}", m.triangles.len())));
        assert_eq!(read_ply(&ply[..]).unwrap(), m);
    }
}
