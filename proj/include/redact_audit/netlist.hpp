/*
 * Copyright (c) 2026 redact-audit contributors
 */

#pragma once

#include "truth_table.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace redact_audit {

struct netlist_error : std::runtime_error {
	explicit netlist_error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Combinational gate vocabulary. Flip-flops are a separate node kind.
enum class GateKind : std::uint8_t { And, Nand, Or, Nor, Xor, Xnor, Not, Buf };

enum class NodeKind : std::uint8_t {
	Input,    ///< primary input
	Floating, ///< net referenced but never driven
	Gate,     ///< combinational gate (GateKind)
	Table,    ///< generic k-input node with an explicit truth table (k <= 4)
	Lut,      ///< k-input LUT whose table is given by configuration bits
	Dff       ///< flip-flop; fan-in is the data pin, the node is its output
};

inline const char *gate_kind_name(GateKind k)
{
	static const char *names[] = {"AND", "NAND", "OR", "NOR", "XOR", "XNOR", "NOT", "BUF"};
	return names[static_cast<int>(k)];
}

/// Canonical local truth table of a gate, under the global row convention
inline std::uint16_t gate_local_table(GateKind kind, unsigned arity)
{
	assert(arity >= 1 && arity <= 4);
	unsigned rows = 1u << arity;
	std::uint16_t bits = 0;
	for (unsigned r = 0; r < rows; ++r) {
		bool v = false;
		switch (kind) {
		case GateKind::And:
			v = (r == rows - 1);
			break;
		case GateKind::Nand:
			v = (r != rows - 1);
			break;
		case GateKind::Or:
			v = (r != 0);
			break;
		case GateKind::Nor:
			v = (r == 0);
			break;
		case GateKind::Xor:
			v = __builtin_popcount(r) & 1;
			break;
		case GateKind::Xnor:
			v = !(__builtin_popcount(r) & 1);
			break;
		case GateKind::Not:
			v = (r == 0);
			break;
		case GateKind::Buf:
			v = (r == 1);
			break;
		}
		if (v)
			bits |= std::uint16_t(1) << r;
	}
	return bits;
}

struct Node {
	NodeKind kind = NodeKind::Floating;
	GateKind gate = GateKind::And;   // valid when kind == Gate
	std::uint16_t table = 0;         // valid when kind == Table, row r at bit r
	std::vector<NodeId> fanins;      // data pin for Dff, inputs otherwise
	std::vector<ConfigBitId> config; // valid when kind == Lut, one id per row

	bool is_combinational() const { return kind == NodeKind::Gate || kind == NodeKind::Table || kind == NodeKind::Lut; }

	/// Local truth table over the node's own fan-ins; Lut nodes have none until keyed
	std::uint16_t local_table() const
	{
		assert(kind == NodeKind::Gate || kind == NodeKind::Table);
		return kind == NodeKind::Gate ? gate_local_table(gate, unsigned(fanins.size())) : table;
	}
};

/*! \brief Gate-level or LUT-level netlist.
 *
 * Node ids are dense, assigned in first-mention order, and stable after
 * construction. Nets are declared by name (intern) and defined at most once;
 * nets never defined are floating. The combinational portion must be acyclic;
 * cycles are legal only through flip-flops. Treated as immutable once built —
 * the transforms in redact.hpp produce fresh netlists.
 */
class Netlist
{
public:
	static constexpr unsigned max_gate_arity = 4;

	/// Get or create the net with this name; new nets start out undriven
	NodeId intern(const std::string &name)
	{
		auto it = by_name_.find(name);
		if (it != by_name_.end())
			return it->second;
		NodeId id = NodeId(nodes_.size());
		nodes_.emplace_back();
		names_.push_back(name);
		by_name_.emplace(name, id);
		return id;
	}

	bool is_defined(NodeId id) const { return nodes_[id].kind != NodeKind::Floating; }

	void define_input(NodeId id)
	{
		claim(id);
		nodes_[id].kind = NodeKind::Input;
		inputs_.push_back(id);
	}

	void define_gate(NodeId id, GateKind kind, std::vector<NodeId> fanins)
	{
		check_arity(names_[id], kind, fanins.size());
		claim(id);
		nodes_[id].kind = NodeKind::Gate;
		nodes_[id].gate = kind;
		nodes_[id].fanins = std::move(fanins);
	}

	void define_table(NodeId id, std::vector<NodeId> fanins, std::uint16_t table)
	{
		if (fanins.empty() || fanins.size() > max_gate_arity)
			throw netlist_error("table node '" + names_[id] + "' must have 1 to 4 inputs");
		claim(id);
		nodes_[id].kind = NodeKind::Table;
		nodes_[id].table = table & std::uint16_t((1u << (1u << fanins.size())) - 1u);
		nodes_[id].fanins = std::move(fanins);
	}

	void define_lut(NodeId id, std::vector<NodeId> fanins, std::vector<ConfigBitId> config)
	{
		if (fanins.size() < 2 || fanins.size() > max_gate_arity)
			throw netlist_error("LUT '" + names_[id] + "' must have 2 to 4 inputs");
		for (std::size_t i = 0; i < fanins.size(); ++i)
			for (std::size_t j = i + 1; j < fanins.size(); ++j)
				if (fanins[i] == fanins[j])
					throw netlist_error("LUT '" + names_[id] + "' has duplicate inputs");
		if (config.size() != std::size_t(1) << fanins.size())
			throw netlist_error("LUT '" + names_[id] + "' needs exactly 2^k configuration bits");
		claim(id);
		nodes_[id].kind = NodeKind::Lut;
		nodes_[id].fanins = std::move(fanins);
		nodes_[id].config = std::move(config);
	}

	void define_dff(NodeId id, NodeId data)
	{
		claim(id);
		nodes_[id].kind = NodeKind::Dff;
		nodes_[id].fanins = {data};
	}

	void mark_output(NodeId id)
	{
		assert(id < nodes_.size());
		outputs_.push_back(id);
	}

	// One-shot builders, convenient for programmatic construction
	NodeId add_input(const std::string &name)
	{
		NodeId id = intern(name);
		define_input(id);
		return id;
	}
	NodeId add_gate(const std::string &name, GateKind kind, std::vector<NodeId> fanins)
	{
		NodeId id = intern(name);
		define_gate(id, kind, std::move(fanins));
		return id;
	}
	NodeId add_table(const std::string &name, std::vector<NodeId> fanins, std::uint16_t table)
	{
		NodeId id = intern(name);
		define_table(id, std::move(fanins), table);
		return id;
	}
	NodeId add_lut(const std::string &name, std::vector<NodeId> fanins, std::vector<ConfigBitId> config)
	{
		NodeId id = intern(name);
		define_lut(id, std::move(fanins), std::move(config));
		return id;
	}
	NodeId add_dff(const std::string &name, NodeId data)
	{
		NodeId id = intern(name);
		define_dff(id, data);
		return id;
	}

	std::size_t size() const { return nodes_.size(); }
	const Node &node(NodeId id) const { return nodes_[id]; }
	const std::string &name(NodeId id) const { return names_[id]; }

	std::optional<NodeId> find(const std::string &name) const
	{
		auto it = by_name_.find(name);
		if (it == by_name_.end())
			return std::nullopt;
		return it->second;
	}

	const std::vector<NodeId> &primary_inputs() const { return inputs_; }
	const std::vector<NodeId> &primary_outputs() const { return outputs_; }

	/// Nets referenced but never driven, in id order
	std::vector<NodeId> floating_nets() const
	{
		std::vector<NodeId> result;
		for (NodeId id = 0; id < nodes_.size(); ++id)
			if (nodes_[id].kind == NodeKind::Floating)
				result.push_back(id);
		return result;
	}

	/// Nets that combinational evaluation treats as free variables
	bool is_cut_point(NodeId id) const
	{
		NodeKind k = nodes_[id].kind;
		return k == NodeKind::Input || k == NodeKind::Floating || k == NodeKind::Dff;
	}

	/*! \brief Combinational nodes in dependency order (fan-ins first).
	 *
	 * Throws if the combinational portion has a cycle; the message names one
	 * node on the cycle.
	 */
	std::vector<NodeId> topo_order() const
	{
		std::vector<NodeId> order;
		order.reserve(nodes_.size());
		// 0 = unvisited, 1 = on stack, 2 = done
		std::vector<std::uint8_t> state(nodes_.size(), 0);
		std::vector<std::pair<NodeId, std::size_t>> stack;
		for (NodeId root = 0; root < nodes_.size(); ++root) {
			if (state[root] || !nodes_[root].is_combinational())
				continue;
			stack.emplace_back(root, 0);
			state[root] = 1;
			while (!stack.empty()) {
				auto &[id, next] = stack.back();
				const auto &fanins = nodes_[id].fanins;
				if (next < fanins.size()) {
					NodeId f = fanins[next++];
					if (!nodes_[f].is_combinational())
						continue;
					if (state[f] == 1)
						throw netlist_error("combinational cycle through net '" + names_[f] + "'");
					if (state[f] == 0) {
						state[f] = 1;
						stack.emplace_back(f, 0);
					}
				} else {
					state[id] = 2;
					order.push_back(id);
					stack.pop_back();
				}
			}
		}
		return order;
	}

	/// Full structural check; throws netlist_error on the first violation
	void validate() const
	{
		for (NodeId id = 0; id < nodes_.size(); ++id) {
			const Node &n = nodes_[id];
			if (n.kind == NodeKind::Dff && n.fanins.size() != 1)
				throw netlist_error("DFF '" + names_[id] + "' must have exactly 1 fan-in");
			if (n.kind == NodeKind::Gate)
				check_arity(names_[id], n.gate, n.fanins.size());
		}
		topo_order(); // throws on combinational cycles
	}

private:
	void claim(NodeId id)
	{
		assert(id < nodes_.size());
		if (nodes_[id].kind != NodeKind::Floating)
			throw netlist_error("duplicate definition of net '" + names_[id] + "'");
	}

	static void check_arity(const std::string &name, GateKind kind, std::size_t arity)
	{
		if (kind == GateKind::Not || kind == GateKind::Buf) {
			if (arity != 1)
				throw netlist_error(std::string(gate_kind_name(kind)) + " '" + name + "' must have exactly 1 fan-in");
		} else if (arity < 1 || arity > max_gate_arity) {
			throw netlist_error(std::string(gate_kind_name(kind)) + " '" + name + "' must have 1 to 4 fan-ins");
		}
	}

	std::vector<Node> nodes_;
	std::vector<std::string> names_;
	std::unordered_map<std::string, NodeId> by_name_;
	std::vector<NodeId> inputs_;
	std::vector<NodeId> outputs_;
};

enum class KeyPointClass : std::uint8_t { FF, PI, PO, FLOATING };

inline const char *key_point_class_name(KeyPointClass c)
{
	static const char *names[] = {"FF", "PI", "PO", "FLOATING"};
	return names[static_cast<int>(c)];
}

struct KeyPoint {
	NodeId node;
	KeyPointClass cls;

	bool operator==(const KeyPoint &) const = default;
};

/*! \brief The anchors used for structural matching: flip-flops, IO pins and
 * floating pins. A net can appear under several classes (e.g. an input that
 * is also an output).
 */
inline std::vector<KeyPoint> key_points(const Netlist &netlist)
{
	std::vector<KeyPoint> result;
	for (NodeId id = 0; id < netlist.size(); ++id)
		if (netlist.node(id).kind == NodeKind::Dff)
			result.push_back({id, KeyPointClass::FF});
	for (NodeId id : netlist.primary_inputs())
		result.push_back({id, KeyPointClass::PI});
	for (NodeId id : netlist.primary_outputs())
		result.push_back({id, KeyPointClass::PO});
	for (NodeId id : netlist.floating_nets())
		result.push_back({id, KeyPointClass::FLOATING});
	return result;
}

/*! \brief Name-keyed structural equality: same IO orders, same node kinds,
 * same fan-in name sequences, same floating set. Node ids may differ.
 */
inline bool structural_equal(const Netlist &a, const Netlist &b)
{
	if (a.size() != b.size())
		return false;
	auto io_equal = [&](const std::vector<NodeId> &xs, const std::vector<NodeId> &ys) {
		if (xs.size() != ys.size())
			return false;
		for (std::size_t i = 0; i < xs.size(); ++i)
			if (a.name(xs[i]) != b.name(ys[i]))
				return false;
		return true;
	};
	if (!io_equal(a.primary_inputs(), b.primary_inputs()) || !io_equal(a.primary_outputs(), b.primary_outputs()))
		return false;
	auto floating_a = a.floating_nets(), floating_b = b.floating_nets();
	std::sort(floating_a.begin(), floating_a.end(), [&a](NodeId x, NodeId y) { return a.name(x) < a.name(y); });
	std::sort(floating_b.begin(), floating_b.end(), [&b](NodeId x, NodeId y) { return b.name(x) < b.name(y); });
	if (!io_equal(floating_a, floating_b))
		return false;
	for (NodeId ia = 0; ia < a.size(); ++ia) {
		auto ib = b.find(a.name(ia));
		if (!ib)
			return false;
		const Node &na = a.node(ia), &nb = b.node(*ib);
		if (na.kind != nb.kind || na.fanins.size() != nb.fanins.size())
			return false;
		if (na.kind == NodeKind::Gate && na.gate != nb.gate)
			return false;
		if (na.kind == NodeKind::Table && na.table != nb.table)
			return false;
		if (na.kind == NodeKind::Lut && na.config != nb.config)
			return false;
		for (std::size_t j = 0; j < na.fanins.size(); ++j)
			if (a.name(na.fanins[j]) != b.name(nb.fanins[j]))
				return false;
	}
	return true;
}

} // namespace redact_audit
