//! C ABI over the `rankmod` codecs.
//!
//! The surface is deliberately small: build a codec from the same JSON
//! recipe the CLI accepts, move permutations across the boundary as
//! `uint32_t` arrays in one-line notation (values `1..=n`), and report
//! every failure through [`RmStatus`] instead of unwinding.
//!
//! Handles returned by [`rm_codec_new`] own the codec; release them with
//! [`rm_codec_free`]. All functions are thread-safe for concurrent reads
//! of the same handle.

use std::ffi::CStr;
use std::os::raw::c_char;

use rankmod::codec::{build_codec, CodecConfig, Message, RankModCodec};
use rankmod::perm::{kendall_distance, Permutation};

// --- handle and status types ---

/// An assembled encoder/decoder pair. Opaque to C; create with
/// `rm_codec_new`, destroy with `rm_codec_free`.
pub struct RmCodec {
    inner: Box<dyn RankModCodec>,
}

/// Result code for every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RmStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The configuration string was not valid UTF-8, not valid JSON, or
    /// described parameters the library rejects.
    InvalidConfig = 2,
    /// An input value was malformed: not a permutation, a symbol out of
    /// range, a message of the wrong shape, or an index past the
    /// codebook.
    InvalidInput = 3,
    /// An output buffer was too small; where the API reports a required
    /// size, it has been written.
    BufferTooSmall = 4,
    /// The word lies beyond the decoder's correction radius. Not an
    /// error in the usual sense: callers count these.
    DecodeFailure = 5,
    /// The codec cannot answer this query (wrong message kind, or a
    /// count that does not fit in the output type).
    Unsupported = 6,
}

/// How a codec's messages are shaped, which picks the encode/decode
/// entry points to use.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RmMessageKind {
    /// Messages are single codebook indices; use `rm_encode_index` and
    /// `rm_decode_index`.
    Index = 0,
    /// Messages are symbol vectors of length `rm_codec_message_len`;
    /// use `rm_encode` and `rm_decode`.
    Symbols = 1,
}

// --- internal helpers ---

unsafe fn codec_ref<'a>(codec: *const RmCodec) -> Option<&'a dyn RankModCodec> {
    codec.as_ref().map(|c| c.inner.as_ref())
}

unsafe fn slice_arg<'a>(data: *const u32, len: usize) -> Option<&'a [u32]> {
    if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

fn perm_from(word: &[u32]) -> Result<Permutation, RmStatus> {
    Permutation::from_one_line(word.to_vec()).map_err(|_| RmStatus::InvalidInput)
}

unsafe fn write_perm(perm: &Permutation, out: *mut u32, len: usize) -> RmStatus {
    let entries = perm.entries();
    if len < entries.len() {
        return RmStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(entries.as_ptr(), out, entries.len());
    RmStatus::Ok
}

// --- construction and teardown ---

/// Build a codec from a JSON recipe (the `CodecConfig` format shared
/// with the CLI), e.g. `{"construction": "I", "p": 2, "m": 3, "t": 1}`.
/// On success writes a handle to `out_codec` and returns `Ok`.
///
/// # Safety
///
/// `config_json` must point to a NUL-terminated string and `out_codec`
/// to writable storage for one pointer. Both must stay valid for the
/// duration of the call.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_new(
    config_json: *const c_char,
    out_codec: *mut *mut RmCodec,
) -> RmStatus {
    if config_json.is_null() || out_codec.is_null() {
        return RmStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(config_json).to_str() else {
        return RmStatus::InvalidConfig;
    };
    let Ok(config) = serde_json::from_str::<CodecConfig>(text) else {
        return RmStatus::InvalidConfig;
    };
    match build_codec(&config) {
        Ok(inner) => {
            *out_codec = Box::into_raw(Box::new(RmCodec { inner }));
            RmStatus::Ok
        }
        Err(_) => RmStatus::InvalidConfig,
    }
}

/// Release a handle from `rm_codec_new`. Passing null is a no-op.
///
/// # Safety
///
/// `codec` must be null or a handle obtained from `rm_codec_new` that
/// has not been freed already; it is invalid after the call.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_free(codec: *mut RmCodec) {
    if !codec.is_null() {
        drop(Box::from_raw(codec));
    }
}

// --- parameter queries ---

/// Permutation length `n`, or `0` for a null handle.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_n(codec: *const RmCodec) -> u32 {
    codec_ref(codec).map_or(0, |c| c.n() as u32)
}

/// Symbols per message (`1` for index-addressed codebooks), or `0` for
/// a null handle.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_message_len(codec: *const RmCodec) -> usize {
    codec_ref(codec).map_or(0, |c| c.message_len())
}

/// Kendall errors the decoder guarantees to correct, or `0` for a null
/// handle.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_kendall_radius(codec: *const RmCodec) -> u64 {
    codec_ref(codec).map_or(0, |c| c.kendall_radius() as u64)
}

/// Minimum Kendall distance the construction certifies, or `0` for a
/// null handle.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_design_distance(codec: *const RmCodec) -> u64 {
    codec_ref(codec).map_or(0, |c| c.design_kendall_distance() as u64)
}

/// Report whether this codec's messages are indices or symbol vectors.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`;
/// `out_kind` must be null or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_message_kind(
    codec: *const RmCodec,
    out_kind: *mut RmMessageKind,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    if out_kind.is_null() {
        return RmStatus::NullArgument;
    }
    *out_kind = match codec.message_by_index(0) {
        Ok(Message::Index(_)) => RmMessageKind::Index,
        _ => RmMessageKind::Symbols,
    };
    RmStatus::Ok
}

/// Total number of messages. Returns `Unsupported` when the count
/// overflows `uint64_t` (large codebooks are sized in bits instead).
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`;
/// `out_count` must be null or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_message_count(
    codec: *const RmCodec,
    out_count: *mut u64,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    if out_count.is_null() {
        return RmStatus::NullArgument;
    }
    match codec.message_count() {
        Some(count) if u64::try_from(count).is_ok() => {
            *out_count = count as u64;
            RmStatus::Ok
        }
        _ => RmStatus::Unsupported,
    }
}

/// Copy the codec's JSON descriptor (family name and parameters) into
/// `buf` as a NUL-terminated string. `out_len` receives the required
/// size in bytes including the terminator; when `buf_len` is too small
/// the call returns `BufferTooSmall` and writes nothing else, so a
/// first call with `buf_len = 0` sizes the buffer.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`. `buf`
/// must be null or point to `buf_len` writable bytes; `out_len` must be
/// null or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_codec_descriptor(
    codec: *const RmCodec,
    buf: *mut c_char,
    buf_len: usize,
    out_len: *mut usize,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    let text = match serde_json::to_string(&codec.descriptor()) {
        Ok(text) => text,
        Err(_) => return RmStatus::Unsupported,
    };
    let needed = text.len() + 1;
    if !out_len.is_null() {
        *out_len = needed;
    }
    if buf.is_null() || buf_len < needed {
        return RmStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
    *buf.add(text.len()) = 0;
    RmStatus::Ok
}

// --- encoding and decoding ---

/// Encode the message with codebook index `index` (deterministic
/// enumeration, `0` is always valid) into `out_perm` as one-line
/// notation of length `rm_codec_n`.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`;
/// `out_perm` must be null or point to `perm_len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn rm_encode_index(
    codec: *const RmCodec,
    index: u64,
    out_perm: *mut u32,
    perm_len: usize,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    if out_perm.is_null() {
        return RmStatus::NullArgument;
    }
    let Ok(message) = codec.message_by_index(u128::from(index)) else {
        return RmStatus::InvalidInput;
    };
    match codec.encode(&message) {
        Ok(perm) => write_perm(&perm, out_perm, perm_len),
        Err(_) => RmStatus::InvalidInput,
    }
}

/// Encode a symbol-vector message (length `rm_codec_message_len`) into
/// `out_perm` as one-line notation of length `rm_codec_n`. Use
/// `rm_encode_index` for index-addressed codecs.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`;
/// `symbols` must be null or point to `symbols_len` readable entries;
/// `out_perm` must be null or point to `perm_len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn rm_encode(
    codec: *const RmCodec,
    symbols: *const u32,
    symbols_len: usize,
    out_perm: *mut u32,
    perm_len: usize,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    let Some(symbols) = slice_arg(symbols, symbols_len) else {
        return RmStatus::NullArgument;
    };
    if out_perm.is_null() {
        return RmStatus::NullArgument;
    }
    match codec.encode(&Message::Symbols(symbols.to_vec())) {
        Ok(perm) => write_perm(&perm, out_perm, perm_len),
        Err(_) => RmStatus::InvalidInput,
    }
}

/// Decode a received permutation back to its codebook index. Returns
/// `DecodeFailure` when the word is beyond the correction radius and
/// `Unsupported` when this codec's messages are symbol vectors.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`; `perm`
/// must be null or point to `perm_len` readable entries; `out_index`
/// must be null or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_decode_index(
    codec: *const RmCodec,
    perm: *const u32,
    perm_len: usize,
    out_index: *mut u64,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    let Some(word) = slice_arg(perm, perm_len) else {
        return RmStatus::NullArgument;
    };
    if out_index.is_null() {
        return RmStatus::NullArgument;
    }
    let word = match perm_from(word) {
        Ok(word) => word,
        Err(status) => return status,
    };
    match codec.decode(&word) {
        Ok(Some((Message::Index(index), _))) => {
            *out_index = index;
            RmStatus::Ok
        }
        Ok(Some((Message::Symbols(_), _))) => RmStatus::Unsupported,
        Ok(None) => RmStatus::DecodeFailure,
        Err(_) => RmStatus::InvalidInput,
    }
}

/// Decode a received permutation back to its symbol-vector message
/// (length `rm_codec_message_len`). Returns `DecodeFailure` when the
/// word is beyond the correction radius and `Unsupported` when this
/// codec's messages are indices.
///
/// # Safety
///
/// `codec` must be null or a live handle from `rm_codec_new`; `perm`
/// must be null or point to `perm_len` readable entries; `out_symbols`
/// must be null or point to `symbols_len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn rm_decode(
    codec: *const RmCodec,
    perm: *const u32,
    perm_len: usize,
    out_symbols: *mut u32,
    symbols_len: usize,
) -> RmStatus {
    let Some(codec) = codec_ref(codec) else {
        return RmStatus::NullArgument;
    };
    let Some(word) = slice_arg(perm, perm_len) else {
        return RmStatus::NullArgument;
    };
    if out_symbols.is_null() {
        return RmStatus::NullArgument;
    }
    let word = match perm_from(word) {
        Ok(word) => word,
        Err(status) => return status,
    };
    match codec.decode(&word) {
        Ok(Some((Message::Symbols(symbols), _))) => {
            if symbols_len < symbols.len() {
                return RmStatus::BufferTooSmall;
            }
            std::ptr::copy_nonoverlapping(symbols.as_ptr(), out_symbols, symbols.len());
            RmStatus::Ok
        }
        Ok(Some((Message::Index(_), _))) => RmStatus::Unsupported,
        Ok(None) => RmStatus::DecodeFailure,
        Err(_) => RmStatus::InvalidInput,
    }
}

// --- standalone metric ---

/// Kendall tau distance between two permutations of the same length in
/// one-line notation (adjacent transpositions needed to turn one into
/// the other).
///
/// # Safety
///
/// `a` and `b` must be null or point to `len` readable entries each;
/// `out_distance` must be null or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_kendall_distance(
    a: *const u32,
    b: *const u32,
    len: usize,
    out_distance: *mut u64,
) -> RmStatus {
    let (Some(a), Some(b)) = (slice_arg(a, len), slice_arg(b, len)) else {
        return RmStatus::NullArgument;
    };
    if out_distance.is_null() {
        return RmStatus::NullArgument;
    }
    let (a, b) = match (perm_from(a), perm_from(b)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return RmStatus::InvalidInput,
    };
    match kendall_distance(&a, &b) {
        Ok(distance) => {
            *out_distance = distance;
            RmStatus::Ok
        }
        Err(_) => RmStatus::InvalidInput,
    }
}
