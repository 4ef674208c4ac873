//! Packed storage for lower-triangular matrices and 3-simplex tensors.
//!
//! Element `(row, col)` with `col <= row` of a triangular matrix lives at
//! flat index `row(row+1)/2 + col`; element `(x, y, z)` with
//! `x + y + z <= N` of a simplex lives at flat index `p3d(x, y, z)`. Both
//! layouts fill `[0, len)` without gaps.

use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::inverses::invert_triangular;
use crate::lattice::{tetrahedral, triangular, Int, LatticePoint3};
use crate::mappings::eval_p3d;

#[derive(Debug, Error)]
pub enum StorageError {
    #[error("index {coords:?} outside {shape}")]
    Index { coords: Vec<Int>, shape: String },
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("malformed stream: {0}")]
    Format(String),
}

fn format_err(msg: impl Into<String>) -> StorageError {
    StorageError::Format(msg.into())
}

/// Flat index of `(row, col)`; requires `0 <= col <= row`.
pub fn tri_index(row: Int, col: Int) -> Result<Int, StorageError> {
    if col < 0 || row < 0 || col > row {
        return Err(StorageError::Index { coords: vec![row, col], shape: "lower triangle".into() });
    }
    Ok(triangular(row) + col)
}

/// `(row, col)` stored at flat index `idx >= 0`.
pub fn tri_unindex(idx: Int) -> (Int, Int) {
    let q = invert_triangular(idx).expect("flat index must be non-negative");
    (q.x, q.y)
}

/// Elements with a fixed-width little-endian encoding.
pub trait LeBytes: Sized + Copy {
    const WIDTH: usize;
    fn write_le(&self, out: &mut Vec<u8>);
    fn read_le(bytes: &[u8]) -> Self;
}

macro_rules! le_bytes {
    ($($t:ty),*) => {$(
        impl LeBytes for $t {
            const WIDTH: usize = std::mem::size_of::<$t>();
            fn write_le(&self, out: &mut Vec<u8>) {
                out.extend_from_slice(&self.to_le_bytes());
            }
            fn read_le(bytes: &[u8]) -> Self {
                <$t>::from_le_bytes(bytes.try_into().expect("width checked by caller"))
            }
        }
    )*};
}

le_bytes!(u8, i32, u32, i64, u64, i128, f32, f64);

const TRI_MAGIC: &[u8; 4] = b"PKT1";
const SIMPLEX_MAGIC: &[u8; 4] = b"PKS1";

fn write_binary<T: LeBytes, W: Write>(mut out: W, magic: &[u8; 4], size: Int, data: &[T]) -> Result<(), StorageError> {
    let mut buf = Vec::with_capacity(12 + data.len() * T::WIDTH);
    buf.extend_from_slice(magic);
    buf.extend_from_slice(&(size as u64).to_le_bytes());
    for v in data {
        v.write_le(&mut buf);
    }
    out.write_all(&buf)?;
    Ok(())
}

fn read_binary<T: LeBytes, R: Read>(mut input: R, magic: &[u8; 4], len_of: fn(Int) -> Int) -> Result<(Int, Vec<T>), StorageError> {
    let mut head = [0u8; 12];
    input.read_exact(&mut head)?;
    if &head[..4] != magic {
        return Err(format_err("bad magic"));
    }
    let size = u64::from_le_bytes(head[4..].try_into().expect("8 bytes")) as Int;
    let mut body = Vec::new();
    input.read_to_end(&mut body)?;
    let len = len_of(size) as usize;
    if body.len() != len * T::WIDTH {
        return Err(format_err(format!("expected {} element bytes, found {}", len * T::WIDTH, body.len())));
    }
    Ok((size, body.chunks_exact(T::WIDTH).map(T::read_le).collect()))
}

/// Reads the `name,size` prefix record and the remaining coordinate rows.
fn read_csv_rows<R: Read>(input: R, name: &str) -> Result<(Int, Vec<csv::StringRecord>), StorageError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(input);
    let mut records = rdr.records();
    let head = records.next().ok_or_else(|| format_err("empty stream"))?.map_err(|e| format_err(e.to_string()))?;
    if head.len() != 2 || &head[0] != name {
        return Err(format_err(format!("expected a `{name},<n>` prefix")));
    }
    let size: Int = head[1].trim().parse().map_err(|_| format_err("size is not an integer"))?;
    let rows = records.collect::<Result<Vec<_>, _>>().map_err(|e| format_err(e.to_string()))?;
    Ok((size, rows))
}

fn parse_field<V: FromStr>(rec: &csv::StringRecord, i: usize) -> Result<V, StorageError> {
    rec.get(i)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| format_err(format!("bad field {i} in {:?}", rec.iter().collect::<Vec<_>>())))
}

/// Lower-triangular `order × order` matrix in `order(order+1)/2` slots.
#[derive(Debug, Clone, PartialEq)]
pub struct PackedTriangular<T> {
    order: Int,
    data: Vec<T>,
}

impl<T> PackedTriangular<T> {
    pub fn len_for(order: Int) -> Int {
        triangular(order)
    }

    pub fn from_fn(order: Int, mut f: impl FnMut(Int, Int) -> T) -> Self {
        assert!(order >= 0, "negative order");
        let data = (0..Self::len_for(order))
            .map(|i| {
                let (r, c) = tri_unindex(i);
                f(r, c)
            })
            .collect();
        PackedTriangular { order, data }
    }

    pub fn order(&self) -> Int {
        self.order
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    fn slot(&self, row: Int, col: Int) -> Result<usize, StorageError> {
        if row >= self.order {
            return Err(StorageError::Index { coords: vec![row, col], shape: format!("order {}", self.order) });
        }
        Ok(tri_index(row, col)? as usize)
    }

    pub fn get(&self, row: Int, col: Int) -> Result<&T, StorageError> {
        let i = self.slot(row, col)?;
        Ok(&self.data[i])
    }

    pub fn get_mut(&mut self, row: Int, col: Int) -> Result<&mut T, StorageError> {
        let i = self.slot(row, col)?;
        Ok(&mut self.data[i])
    }

    pub fn set(&mut self, row: Int, col: Int, value: T) -> Result<(), StorageError> {
        *self.get_mut(row, col)? = value;
        Ok(())
    }

    /// Upper-triangular view: `(row, col)` with `row <= col`.
    pub fn get_upper(&self, row: Int, col: Int) -> Result<&T, StorageError> {
        self.get(col, row)
    }

    pub fn set_upper(&mut self, row: Int, col: Int, value: T) -> Result<(), StorageError> {
        self.set(col, row, value)
    }
}

impl<T: Clone> PackedTriangular<T> {
    pub fn new(order: Int, fill: T) -> Self {
        assert!(order >= 0, "negative order");
        PackedTriangular { order, data: vec![fill; Self::len_for(order) as usize] }
    }
}

impl<T: fmt::Display> PackedTriangular<T> {
    /// `order,<n>` then one `row,col,value` record per slot in flat order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), StorageError> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        let io = |e: csv::Error| format_err(e.to_string());
        w.write_record(["order".to_string(), self.order.to_string()]).map_err(io)?;
        for (i, v) in self.data.iter().enumerate() {
            let (r, c) = tri_unindex(i as Int);
            w.write_record([r.to_string(), c.to_string(), v.to_string()]).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

impl<T: FromStr> PackedTriangular<T> {
    pub fn read_csv<R: Read>(input: R) -> Result<Self, StorageError> {
        let (order, rows) = read_csv_rows(input, "order")?;
        if order < 0 || rows.len() as Int != Self::len_for(order) {
            return Err(format_err(format!("order {order} needs {} records, found {}", Self::len_for(order), rows.len())));
        }
        let mut data = Vec::with_capacity(rows.len());
        for (i, rec) in rows.iter().enumerate() {
            let (r, c): (Int, Int) = (parse_field(rec, 0)?, parse_field(rec, 1)?);
            if tri_index(r, c)? != i as Int {
                return Err(format_err(format!("record {i} holds ({r},{c}) out of layout order")));
            }
            data.push(parse_field(rec, 2)?);
        }
        Ok(PackedTriangular { order, data })
    }
}

impl<T: LeBytes> PackedTriangular<T> {
    /// `PKT1`, order as u64, then the elements, all little-endian.
    pub fn write_binary<W: Write>(&self, out: W) -> Result<(), StorageError> {
        write_binary(out, TRI_MAGIC, self.order, &self.data)
    }

    pub fn read_binary<R: Read>(input: R) -> Result<Self, StorageError> {
        let (order, data) = read_binary(input, TRI_MAGIC, triangular)?;
        Ok(PackedTriangular { order, data })
    }
}

/// Values on `{(x, y, z) in N0^3 : x + y + z <= extent}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PackedSimplex3<T> {
    extent: Int,
    data: Vec<T>,
}

fn simplex_len(extent: Int) -> Int {
    tetrahedral(extent + 1)
}

impl<T> PackedSimplex3<T> {
    /// `(N+1)(N+2)(N+3)/6`.
    pub fn len_for(extent: Int) -> Int {
        simplex_len(extent)
    }

    pub fn from_fn(extent: Int, mut f: impl FnMut(LatticePoint3) -> T) -> Self {
        assert!(extent >= 0, "negative extent");
        let data = (0..Self::len_for(extent))
            .map(|i| f(crate::inverses::invert_p3d(i).expect("non-negative")))
            .collect();
        PackedSimplex3 { extent, data }
    }

    pub fn extent(&self) -> Int {
        self.extent
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn index_of(&self, p: LatticePoint3) -> Result<usize, StorageError> {
        let out = || StorageError::Index { coords: vec![p.x, p.y, p.z], shape: format!("simplex of extent {}", self.extent) };
        if p.x < 0 || p.y < 0 || p.z < 0 || p.x + p.y + p.z > self.extent {
            return Err(out());
        }
        Ok(eval_p3d(p).map_err(|_| out())? as usize)
    }

    pub fn get(&self, p: LatticePoint3) -> Result<&T, StorageError> {
        let i = self.index_of(p)?;
        Ok(&self.data[i])
    }

    pub fn set(&mut self, p: LatticePoint3, value: T) -> Result<(), StorageError> {
        let i = self.index_of(p)?;
        self.data[i] = value;
        Ok(())
    }
}

impl<T: Clone> PackedSimplex3<T> {
    pub fn new(extent: Int, fill: T) -> Self {
        assert!(extent >= 0, "negative extent");
        PackedSimplex3 { extent, data: vec![fill; Self::len_for(extent) as usize] }
    }
}

impl<T: fmt::Display> PackedSimplex3<T> {
    /// `extent,<n>` then one `x,y,z,value` record per slot in flat order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), StorageError> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        let io = |e: csv::Error| format_err(e.to_string());
        w.write_record(["extent".to_string(), self.extent.to_string()]).map_err(io)?;
        for (i, v) in self.data.iter().enumerate() {
            let p = crate::inverses::invert_p3d(i as Int).expect("non-negative");
            w.write_record([p.x.to_string(), p.y.to_string(), p.z.to_string(), v.to_string()]).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

impl<T: FromStr> PackedSimplex3<T> {
    pub fn read_csv<R: Read>(input: R) -> Result<Self, StorageError> {
        let (extent, rows) = read_csv_rows(input, "extent")?;
        if extent < 0 || rows.len() as Int != simplex_len(extent) {
            return Err(format_err(format!("extent {extent} needs {} records, found {}", simplex_len(extent), rows.len())));
        }
        let mut data = Vec::with_capacity(rows.len());
        for (i, rec) in rows.iter().enumerate() {
            let p = LatticePoint3::new(parse_field(rec, 0)?, parse_field(rec, 1)?, parse_field(rec, 2)?);
            if eval_p3d(p).ok() != Some(i as Int) || p.x + p.y + p.z > extent {
                return Err(format_err(format!("record {i} holds {p} out of layout order")));
            }
            data.push(parse_field(rec, 3)?);
        }
        Ok(PackedSimplex3 { extent, data })
    }
}

impl<T: LeBytes> PackedSimplex3<T> {
    /// `PKS1`, extent as u64, then the elements, all little-endian.
    pub fn write_binary<W: Write>(&self, out: W) -> Result<(), StorageError> {
        write_binary(out, SIMPLEX_MAGIC, self.extent, &self.data)
    }

    pub fn read_binary<R: Read>(input: R) -> Result<Self, StorageError> {
        let (extent, data) = read_binary(input, SIMPLEX_MAGIC, simplex_len)?;
        Ok(PackedSimplex3 { extent, data })
    }
}
