/*
 * Copyright (c) 2026 redact-audit contributors
 */

#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace redact_audit {

using NodeId = std::uint32_t;
using ConfigBitId = std::uint32_t;

/*! \brief Truth table of a single-output function over an ordered input list.
 *
 * Row convention (global, bit-exact across the whole library): row r assigns
 * inputs[j] = bit j of r, with inputs[0] as the least-significant bit.
 * Row r of the table is stored as bit (r % 64) of word (r / 64).
 */
class truth_table
{
public:
	truth_table() : words_(1, 0) {}

	explicit truth_table(std::vector<NodeId> inputs) : inputs_(std::move(inputs)), words_(word_count(inputs_.size()), 0) {}

	static std::size_t word_count(std::size_t num_inputs) { return num_inputs <= 6 ? 1 : (std::size_t(1) << (num_inputs - 6)); }

	std::size_t num_inputs() const { return inputs_.size(); }

	std::uint64_t num_rows() const { return std::uint64_t(1) << inputs_.size(); }

	const std::vector<NodeId> &inputs() const { return inputs_; }

	bool bit(std::uint64_t row) const
	{
		assert(row < num_rows());
		return (words_[row >> 6] >> (row & 63)) & 1;
	}

	void set_bit(std::uint64_t row, bool value)
	{
		assert(row < num_rows());
		std::uint64_t mask = std::uint64_t(1) << (row & 63);
		if (value)
			words_[row >> 6] |= mask;
		else
			words_[row >> 6] &= ~mask;
	}

	std::vector<std::uint64_t> &words() { return words_; }
	const std::vector<std::uint64_t> &words() const { return words_; }

	/// Zero out the unused high bits of the last word (invariant for operator==)
	void mask_tail()
	{
		if (inputs_.size() < 6)
			words_[0] &= (std::uint64_t(1) << num_rows()) - 1;
	}

	/// Hex rendering, most significant nibble first; row 0 is the LSB
	std::string to_hex() const
	{
		static const char digits[] = "0123456789abcdef";
		std::size_t n_digits = num_rows() <= 4 ? 1 : num_rows() / 4;
		std::string out(n_digits, '0');
		for (std::size_t d = 0; d < n_digits; ++d) {
			std::uint64_t nibble = (words_[d / 16] >> ((d % 16) * 4)) & 0xf;
			out[n_digits - 1 - d] = digits[nibble];
		}
		return out;
	}

	bool operator==(const truth_table &other) const = default;

private:
	std::vector<NodeId> inputs_;
	std::vector<std::uint64_t> words_;
};

/// Mixer used everywhere a stable, platform-independent hash is needed
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ull + h;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
	return x ^ (x >> 31);
}

inline std::uint64_t hash_value(const truth_table &tt)
{
	std::uint64_t h = hash_mix(0, tt.num_inputs());
	for (std::uint64_t w : tt.words())
		h = hash_mix(h, w);
	return h;
}

/*! \brief Fills `words` with the projection function of input `j` over `n` inputs.
 *
 * The projection of input j evaluates to bit j of the row index.
 */
inline void fill_projection(std::vector<std::uint64_t> &words, unsigned j, unsigned n)
{
	static const std::uint64_t pattern[6] = {0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
						 0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull};
	assert(j < n);
	words.assign(truth_table::word_count(n), 0);
	if (j < 6) {
		std::uint64_t p = pattern[j];
		if (n < 6)
			p &= (std::uint64_t(1) << (std::uint64_t(1) << n)) - 1;
		for (auto &w : words)
			w = p;
	} else {
		for (std::size_t w = 0; w < words.size(); ++w)
			words[w] = ((w >> (j - 6)) & 1) ? ~std::uint64_t(0) : 0;
	}
}

} // namespace redact_audit

template <>
struct std::hash<redact_audit::truth_table> {
	std::size_t operator()(const redact_audit::truth_table &tt) const { return redact_audit::hash_value(tt); }
};
