/*
 * Copyright (c) 2026 redact-audit contributors
 */

#pragma once

#include "netlist.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace redact_audit {

struct parse_error : netlist_error {
	int line;
	int column;

	parse_error(int line_, int column_, const std::string &msg)
	    : netlist_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + msg), line(line_), column(column_)
	{
	}
};

namespace detail {

struct Token {
	std::string text;
	int column; // 1-based
};

inline bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' || c == ']'; }

inline bool is_valid_name(const std::string &s)
{
	if (s.empty())
		return false;
	char c0 = s[0];
	if (!std::isalpha(static_cast<unsigned char>(c0)) && c0 != '_')
		return false;
	for (char c : s)
		if (!is_name_char(c))
			return false;
	return true;
}

inline std::vector<Token> tokenize_line(const std::string &line, int line_no)
{
	std::vector<Token> tokens;
	std::size_t i = 0;
	while (i < line.size()) {
		char c = line[i];
		if (c == '#')
			break;
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		if (c == '=' || c == '(' || c == ')' || c == ',' || c == ';') {
			tokens.push_back({std::string(1, c), int(i) + 1});
			++i;
			continue;
		}
		if (is_name_char(c)) {
			std::size_t start = i;
			while (i < line.size() && is_name_char(line[i]))
				++i;
			tokens.push_back({line.substr(start, i - start), int(start) + 1});
			continue;
		}
		throw parse_error(line_no, int(i) + 1, std::string("unexpected character '") + c + "'");
	}
	return tokens;
}

inline std::string to_upper(std::string s)
{
	for (char &c : s)
		c = char(std::toupper(static_cast<unsigned char>(c)));
	return s;
}

inline bool parse_config_bit(const std::string &s, ConfigBitId &out)
{
	if (s.size() < 2 || s[0] != 'k')
		return false;
	std::uint64_t v = 0;
	for (std::size_t i = 1; i < s.size(); ++i) {
		if (!std::isdigit(static_cast<unsigned char>(s[i])))
			return false;
		v = v * 10 + unsigned(s[i] - '0');
		if (v > 0xffffffffull)
			return false;
	}
	out = ConfigBitId(v);
	return true;
}

} // namespace detail

/*! \brief Parses a bench-style netlist, including the LUT extension.
 *
 * Grammar: `INPUT(<name>)`, `OUTPUT(<name>)`,
 * `<name> = <KIND>(<name>{, <name>})` with KIND one of
 * AND/NAND/OR/NOR/XOR/XNOR/NOT/BUF/DFF, and
 * `<name> = LUT<k>(<in1>,...,<ink> ; <b0>,...,<b_{2^k-1}>)` where each b is a
 * configuration-bit identifier `k[0-9]+` (identifier reuse expresses
 * compaction). Keywords are case-insensitive, `#` starts a comment, blank
 * lines are ignored. Undriven nets are recorded as floating, not rejected.
 */
inline Netlist parse_bench(const std::string &text)
{
	using namespace detail;
	Netlist netlist;
	std::set<std::string> declared_outputs;
	std::istringstream in(text);
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		auto tokens = tokenize_line(line, line_no);
		if (tokens.empty())
			continue;

		auto expect = [&](std::size_t i, const char *what) -> const Token & {
			if (i >= tokens.size())
				throw parse_error(line_no, int(line.size()) + 1, std::string("expected ") + what);
			return tokens[i];
		};
		auto expect_punct = [&](std::size_t i, const char *p) {
			const Token &t = expect(i, p);
			if (t.text != p)
				throw parse_error(line_no, t.column, std::string("expected '") + p + "', got '" + t.text + "'");
		};
		auto expect_name = [&](std::size_t i) -> const Token & {
			const Token &t = expect(i, "a net name");
			if (!is_valid_name(t.text))
				throw parse_error(line_no, t.column, "invalid net name '" + t.text + "'");
			return t;
		};

		std::string keyword = to_upper(tokens[0].text);
		if (keyword == "INPUT" || keyword == "OUTPUT") {
			expect_punct(1, "(");
			const Token &name = expect_name(2);
			expect_punct(3, ")");
			if (tokens.size() > 4)
				throw parse_error(line_no, tokens[4].column, "trailing tokens after declaration");
			if (keyword == "INPUT") {
				try {
					netlist.define_input(netlist.intern(name.text));
				} catch (const netlist_error &e) {
					throw parse_error(line_no, name.column, e.what());
				}
			} else {
				if (!declared_outputs.insert(name.text).second)
					throw parse_error(line_no, name.column, "duplicate output declaration of '" + name.text + "'");
				netlist.mark_output(netlist.intern(name.text));
			}
			continue;
		}

		// <name> = <KIND>( ... )
		const Token &lhs = expect_name(0);
		expect_punct(1, "=");
		const Token &kind_tok = expect(2, "a gate kind");
		expect_punct(3, "(");
		std::size_t i = 4;
		std::vector<Token> args;
		std::vector<Token> config_args;
		bool in_config = false;
		while (true) {
			const Token &t = expect(i, "')'");
			if (t.text == ")") {
				++i;
				break;
			}
			if (t.text == ";") {
				if (in_config)
					throw parse_error(line_no, t.column, "unexpected ';'");
				in_config = true;
				++i;
				continue;
			}
			if (t.text == ",") {
				++i;
				continue;
			}
			if (!is_valid_name(t.text))
				throw parse_error(line_no, t.column, "invalid name '" + t.text + "'");
			(in_config ? config_args : args).push_back(t);
			++i;
		}
		if (i < tokens.size())
			throw parse_error(line_no, tokens[i].column, "trailing tokens after gate definition");
		if (args.empty())
			throw parse_error(line_no, kind_tok.column, "gate '" + lhs.text + "' has no fan-ins");

		std::string kind = to_upper(kind_tok.text);
		try {
			NodeId id = netlist.intern(lhs.text);
			if (kind == "LUT2" || kind == "LUT3" || kind == "LUT4") {
				unsigned k = unsigned(kind[3] - '0');
				if (args.size() != k)
					throw parse_error(line_no, kind_tok.column,
							  kind + " '" + lhs.text + "' needs exactly " + std::to_string(k) + " inputs");
				if (config_args.size() != (std::size_t(1) << k))
					throw parse_error(line_no, kind_tok.column,
							  kind + " '" + lhs.text + "' needs exactly " + std::to_string(1u << k) +
							      " configuration bits");
				std::vector<NodeId> fanins;
				for (const Token &a : args)
					fanins.push_back(netlist.intern(a.text));
				std::vector<ConfigBitId> config;
				for (const Token &c : config_args) {
					ConfigBitId bit;
					if (!detail::parse_config_bit(c.text, bit))
						throw parse_error(line_no, c.column, "invalid configuration bit '" + c.text + "'");
					config.push_back(bit);
				}
				netlist.define_lut(id, std::move(fanins), std::move(config));
				continue;
			}
			if (in_config)
				throw parse_error(line_no, kind_tok.column, "';' is only valid inside LUT definitions");
			if (kind == "DFF") {
				if (args.size() != 1)
					throw parse_error(line_no, kind_tok.column, "DFF '" + lhs.text + "' must have exactly 1 fan-in");
				netlist.define_dff(id, netlist.intern(args[0].text));
				continue;
			}
			static const std::map<std::string, GateKind> kinds = {
			    {"AND", GateKind::And}, {"NAND", GateKind::Nand}, {"OR", GateKind::Or},   {"NOR", GateKind::Nor},
			    {"XOR", GateKind::Xor}, {"XNOR", GateKind::Xnor}, {"NOT", GateKind::Not}, {"BUF", GateKind::Buf}};
			auto it = kinds.find(kind);
			if (it == kinds.end())
				throw parse_error(line_no, kind_tok.column, "unknown gate kind '" + kind_tok.text + "'");
			std::vector<NodeId> fanins;
			for (const Token &a : args)
				fanins.push_back(netlist.intern(a.text));
			netlist.define_gate(id, it->second, std::move(fanins));
		} catch (const parse_error &) {
			throw;
		} catch (const netlist_error &e) {
			throw parse_error(line_no, lhs.column, e.what());
		}
	}
	netlist.validate();
	return netlist;
}

/*! \brief Serializes back to bench text; parse_bench(serialize_bench(n)) is
 * structurally identical to n. Floating nets are listed in a comment header.
 * Table nodes have no bench representation and are rejected.
 */
inline std::string serialize_bench(const Netlist &netlist)
{
	std::ostringstream out;
	auto floating = netlist.floating_nets();
	if (!floating.empty()) {
		out << "# floating:";
		for (NodeId id : floating)
			out << ' ' << netlist.name(id);
		out << '\n';
	}
	for (NodeId id : netlist.primary_inputs())
		out << "INPUT(" << netlist.name(id) << ")\n";
	for (NodeId id : netlist.primary_outputs())
		out << "OUTPUT(" << netlist.name(id) << ")\n";
	for (NodeId id = 0; id < netlist.size(); ++id) {
		const Node &n = netlist.node(id);
		switch (n.kind) {
		case NodeKind::Input:
		case NodeKind::Floating:
			break;
		case NodeKind::Dff:
			out << netlist.name(id) << " = DFF(" << netlist.name(n.fanins[0]) << ")\n";
			break;
		case NodeKind::Gate: {
			out << netlist.name(id) << " = " << gate_kind_name(n.gate) << '(';
			for (std::size_t j = 0; j < n.fanins.size(); ++j)
				out << (j ? ", " : "") << netlist.name(n.fanins[j]);
			out << ")\n";
			break;
		}
		case NodeKind::Lut: {
			out << netlist.name(id) << " = LUT" << n.fanins.size() << '(';
			for (std::size_t j = 0; j < n.fanins.size(); ++j)
				out << (j ? "," : "") << netlist.name(n.fanins[j]);
			out << " ; ";
			for (std::size_t r = 0; r < n.config.size(); ++r)
				out << (r ? "," : "") << 'k' << n.config[r];
			out << ")\n";
			break;
		}
		case NodeKind::Table:
			throw netlist_error("table node '" + netlist.name(id) + "' has no bench representation");
		}
	}
	return out.str();
}

/// Key file: one `k<id>=<0|1>` per line
inline std::string serialize_key(const std::map<ConfigBitId, bool> &bits)
{
	std::ostringstream out;
	for (auto [id, v] : bits)
		out << 'k' << id << '=' << (v ? '1' : '0') << '\n';
	return out.str();
}

inline std::map<ConfigBitId, bool> parse_key(const std::string &text)
{
	std::map<ConfigBitId, bool> bits;
	std::istringstream in(text);
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		auto tokens = detail::tokenize_line(line, line_no);
		if (tokens.empty())
			continue;
		if (tokens.size() != 3 || tokens[1].text != "=")
			throw parse_error(line_no, tokens[0].column, "expected k<id>=<0|1>");
		ConfigBitId id;
		if (!detail::parse_config_bit(tokens[0].text, id))
			throw parse_error(line_no, tokens[0].column, "invalid configuration bit '" + tokens[0].text + "'");
		if (tokens[2].text != "0" && tokens[2].text != "1")
			throw parse_error(line_no, tokens[2].column, "key value must be 0 or 1");
		if (!bits.emplace(id, tokens[2].text == "1").second)
			throw parse_error(line_no, tokens[0].column, "duplicate key bit k" + std::to_string(id));
	}
	return bits;
}

/// Compaction groups file: one group per line, ids separated by spaces/commas
inline std::vector<std::vector<ConfigBitId>> parse_groups(const std::string &text)
{
	std::vector<std::vector<ConfigBitId>> groups;
	std::istringstream in(text);
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		auto tokens = detail::tokenize_line(line, line_no);
		std::vector<ConfigBitId> group;
		for (const auto &t : tokens) {
			if (t.text == ",")
				continue;
			ConfigBitId id;
			if (!detail::parse_config_bit(t.text, id))
				throw parse_error(line_no, t.column, "invalid configuration bit '" + t.text + "'");
			group.push_back(id);
		}
		if (!group.empty())
			groups.push_back(std::move(group));
	}
	return groups;
}

inline std::string read_text_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw netlist_error("cannot open file '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &content)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw netlist_error("cannot write file '" + path + "'");
	out << content;
}

inline Netlist parse_bench_file(const std::string &path) { return parse_bench(read_text_file(path)); }

} // namespace redact_audit
