#ifndef RANKMOD_H
#define RANKMOD_H

/* Generated from the rankmod-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// How a codec's messages are shaped, which picks the encode/decode
// entry points to use.
typedef enum RmMessageKind {
  // Messages are single codebook indices; use `rm_encode_index` and
  // `rm_decode_index`.
  RM_MESSAGE_KIND_INDEX = 0,
  // Messages are symbol vectors of length `rm_codec_message_len`;
  // use `rm_encode` and `rm_decode`.
  RM_MESSAGE_KIND_SYMBOLS = 1,
} RmMessageKind;

// Result code for every fallible entry point.
typedef enum RmStatus {
  // The call succeeded.
  RM_STATUS_OK = 0,
  // A required pointer argument was null.
  RM_STATUS_NULL_ARGUMENT = 1,
  // The configuration string was not valid UTF-8, not valid JSON, or
  // described parameters the library rejects.
  RM_STATUS_INVALID_CONFIG = 2,
  // An input value was malformed: not a permutation, a symbol out of
  // range, a message of the wrong shape, or an index past the
  // codebook.
  RM_STATUS_INVALID_INPUT = 3,
  // An output buffer was too small; where the API reports a required
  // size, it has been written.
  RM_STATUS_BUFFER_TOO_SMALL = 4,
  // The word lies beyond the decoder's correction radius. Not an
  // error in the usual sense: callers count these.
  RM_STATUS_DECODE_FAILURE = 5,
  // The codec cannot answer this query (wrong message kind, or a
  // count that does not fit in the output type).
  RM_STATUS_UNSUPPORTED = 6,
} RmStatus;

// An assembled encoder/decoder pair. Opaque to C; create with
// `rm_codec_new`, destroy with `rm_codec_free`.
typedef struct RmCodec RmCodec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build a codec from a JSON recipe (the `CodecConfig` format shared
// with the CLI), e.g. `{"construction": "I", "p": 2, "m": 3, "t": 1}`.
// On success writes a handle to `out_codec` and returns `Ok`.
//
// # Safety
//
// `config_json` must point to a NUL-terminated string and `out_codec`
// to writable storage for one pointer. Both must stay valid for the
// duration of the call.
enum RmStatus rm_codec_new(const char *config_json, struct RmCodec **out_codec);

// Release a handle from `rm_codec_new`. Passing null is a no-op.
//
// # Safety
//
// `codec` must be null or a handle obtained from `rm_codec_new` that
// has not been freed already; it is invalid after the call.
void rm_codec_free(struct RmCodec *codec);

// Permutation length `n`, or `0` for a null handle.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`.
uint32_t rm_codec_n(const struct RmCodec *codec);

// Symbols per message (`1` for index-addressed codebooks), or `0` for
// a null handle.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`.
size_t rm_codec_message_len(const struct RmCodec *codec);

// Kendall errors the decoder guarantees to correct, or `0` for a null
// handle.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`.
uint64_t rm_codec_kendall_radius(const struct RmCodec *codec);

// Minimum Kendall distance the construction certifies, or `0` for a
// null handle.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`.
uint64_t rm_codec_design_distance(const struct RmCodec *codec);

// Report whether this codec's messages are indices or symbol vectors.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`;
// `out_kind` must be null or point to writable storage.
enum RmStatus rm_codec_message_kind(const struct RmCodec *codec, enum RmMessageKind *out_kind);

// Total number of messages. Returns `Unsupported` when the count
// overflows `uint64_t` (large codebooks are sized in bits instead).
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`;
// `out_count` must be null or point to writable storage.
enum RmStatus rm_codec_message_count(const struct RmCodec *codec, uint64_t *out_count);

// Copy the codec's JSON descriptor (family name and parameters) into
// `buf` as a NUL-terminated string. `out_len` receives the required
// size in bytes including the terminator; when `buf_len` is too small
// the call returns `BufferTooSmall` and writes nothing else, so a
// first call with `buf_len = 0` sizes the buffer.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`. `buf`
// must be null or point to `buf_len` writable bytes; `out_len` must be
// null or point to writable storage.
enum RmStatus rm_codec_descriptor(const struct RmCodec *codec,
                                  char *buf,
                                  size_t buf_len,
                                  size_t *out_len);

// Encode the message with codebook index `index` (deterministic
// enumeration, `0` is always valid) into `out_perm` as one-line
// notation of length `rm_codec_n`.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`;
// `out_perm` must be null or point to `perm_len` writable entries.
enum RmStatus rm_encode_index(const struct RmCodec *codec,
                              uint64_t index,
                              uint32_t *out_perm,
                              size_t perm_len);

// Encode a symbol-vector message (length `rm_codec_message_len`) into
// `out_perm` as one-line notation of length `rm_codec_n`. Use
// `rm_encode_index` for index-addressed codecs.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`;
// `symbols` must be null or point to `symbols_len` readable entries;
// `out_perm` must be null or point to `perm_len` writable entries.
enum RmStatus rm_encode(const struct RmCodec *codec,
                        const uint32_t *symbols,
                        size_t symbols_len,
                        uint32_t *out_perm,
                        size_t perm_len);

// Decode a received permutation back to its codebook index. Returns
// `DecodeFailure` when the word is beyond the correction radius and
// `Unsupported` when this codec's messages are symbol vectors.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`; `perm`
// must be null or point to `perm_len` readable entries; `out_index`
// must be null or point to writable storage.
enum RmStatus rm_decode_index(const struct RmCodec *codec,
                              const uint32_t *perm,
                              size_t perm_len,
                              uint64_t *out_index);

// Decode a received permutation back to its symbol-vector message
// (length `rm_codec_message_len`). Returns `DecodeFailure` when the
// word is beyond the correction radius and `Unsupported` when this
// codec's messages are indices.
//
// # Safety
//
// `codec` must be null or a live handle from `rm_codec_new`; `perm`
// must be null or point to `perm_len` readable entries; `out_symbols`
// must be null or point to `symbols_len` writable entries.
enum RmStatus rm_decode(const struct RmCodec *codec,
                        const uint32_t *perm,
                        size_t perm_len,
                        uint32_t *out_symbols,
                        size_t symbols_len);

// Kendall tau distance between two permutations of the same length in
// one-line notation (adjacent transpositions needed to turn one into
// the other).
//
// # Safety
//
// `a` and `b` must be null or point to `len` readable entries each;
// `out_distance` must be null or point to writable storage.
enum RmStatus rm_kendall_distance(const uint32_t *a,
                                  const uint32_t *b,
                                  size_t len,
                                  uint64_t *out_distance);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKMOD_H */
