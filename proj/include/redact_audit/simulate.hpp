/*
 * Copyright (c) 2026 redact-audit contributors
 */

#pragma once

#include "netlist.hpp"
#include "truth_table.hpp"

#include <map>
#include <string>
#include <vector>

namespace redact_audit {

struct cap_error : netlist_error {
	explicit cap_error(const std::string &msg) : netlist_error(msg) {}
};

/*! \brief Single-output combinational fan-in cone, cut at primary inputs,
 * DFF outputs and floating nets.
 *
 * The cut nets appear as Input nodes of the embedded sub-netlist. `support`
 * holds the cut points in first-visit order of the fan-in traversal, by
 * parent-netlist id; `sub_support` holds the same nets by sub-netlist id.
 */
struct Cone {
	NodeId root = 0;                  ///< id in the parent netlist
	Netlist subnetlist;               ///< combinational restriction, single output
	NodeId sub_root = 0;              ///< root id within subnetlist
	std::vector<NodeId> support;      ///< parent ids, duplicate-free
	std::vector<NodeId> sub_support;  ///< subnetlist ids, same order
};

/*! \brief Extracts the transitive combinational fan-in cone of a node.
 *
 * A cut-point root (PI, DFF output, floating net) yields a degenerate 0-gate
 * cone whose functionality is the identity on one support bit.
 */
inline Cone cone_of(const Netlist &netlist, NodeId root)
{
	Cone cone;
	cone.root = root;

	if (netlist.is_cut_point(root)) {
		NodeId sub = cone.subnetlist.add_input(netlist.name(root));
		cone.subnetlist.mark_output(sub);
		cone.sub_root = sub;
		cone.support = {root};
		cone.sub_support = {sub};
		return cone;
	}

	// DFS: record cut points on first visit, combinational nodes in post-order
	std::vector<NodeId> order;
	std::vector<std::uint8_t> seen(netlist.size(), 0);
	std::vector<std::pair<NodeId, std::size_t>> stack;
	stack.emplace_back(root, 0);
	seen[root] = 1;
	while (!stack.empty()) {
		auto &[id, next] = stack.back();
		const auto &fanins = netlist.node(id).fanins;
		if (next < fanins.size()) {
			NodeId f = fanins[next++];
			if (seen[f])
				continue;
			seen[f] = 1;
			if (netlist.is_cut_point(f)) {
				cone.support.push_back(f);
				cone.subnetlist.add_input(netlist.name(f));
			} else {
				stack.emplace_back(f, 0);
			}
		} else {
			order.push_back(id);
			stack.pop_back();
		}
	}

	for (std::size_t i = 0; i < cone.support.size(); ++i)
		cone.sub_support.push_back(NodeId(i));

	for (NodeId id : order) {
		const Node &n = netlist.node(id);
		std::vector<NodeId> fanins;
		for (NodeId f : n.fanins)
			fanins.push_back(*cone.subnetlist.find(netlist.name(f)));
		NodeId sub;
		switch (n.kind) {
		case NodeKind::Gate:
			sub = cone.subnetlist.add_gate(netlist.name(id), n.gate, std::move(fanins));
			break;
		case NodeKind::Table:
			sub = cone.subnetlist.add_table(netlist.name(id), std::move(fanins), n.table);
			break;
		case NodeKind::Lut:
			sub = cone.subnetlist.add_lut(netlist.name(id), std::move(fanins), n.config);
			break;
		default:
			throw netlist_error("cone traversal reached a non-combinational node");
		}
		if (id == root) {
			cone.subnetlist.mark_output(sub);
			cone.sub_root = sub;
		}
	}
	return cone;
}

/*! \brief Evaluates every node under one input assignment.
 *
 * The assignment must cover all primary inputs, floating nets and DFF outputs
 * (pseudo-inputs of the combinational evaluation); extra entries are ignored.
 */
inline std::map<NodeId, bool> simulate(const Netlist &netlist, const std::map<NodeId, bool> &assignment)
{
	std::vector<std::uint8_t> value(netlist.size(), 0);
	for (NodeId id = 0; id < netlist.size(); ++id) {
		if (!netlist.is_cut_point(id))
			continue;
		auto it = assignment.find(id);
		if (it == assignment.end())
			throw netlist_error("missing assignment for net '" + netlist.name(id) + "'");
		value[id] = it->second;
	}
	for (NodeId id : netlist.topo_order()) {
		const Node &n = netlist.node(id);
		if (n.kind == NodeKind::Lut)
			throw netlist_error("LUT '" + netlist.name(id) + "' cannot be simulated without a key");
		unsigned row = 0;
		for (std::size_t j = 0; j < n.fanins.size(); ++j)
			row |= unsigned(value[n.fanins[j]]) << j;
		value[id] = (n.local_table() >> row) & 1;
	}
	std::map<NodeId, bool> result;
	for (NodeId id = 0; id < netlist.size(); ++id)
		result[id] = value[id];
	return result;
}

namespace detail {

/// Bitwise evaluation of one node from its fan-in bit vectors (2^n rows)
inline void eval_node_words(const Node &n, const std::vector<const std::uint64_t *> &fanins, std::uint64_t *out, std::size_t n_words,
			    unsigned n_support)
{
	std::uint16_t table;
	switch (n.kind) {
	case NodeKind::Gate:
	case NodeKind::Table:
		table = n.local_table();
		break;
	default:
		throw netlist_error("cannot evaluate a LUT without a key");
	}
	unsigned k = unsigned(fanins.size());
	for (std::size_t w = 0; w < n_words; ++w) {
		std::uint64_t acc = 0;
		for (unsigned r = 0; r < (1u << k); ++r) {
			if (!((table >> r) & 1))
				continue;
			std::uint64_t minterm = ~std::uint64_t(0);
			for (unsigned j = 0; j < k; ++j)
				minterm &= ((r >> j) & 1) ? fanins[j][w] : ~fanins[j][w];
			acc |= minterm;
		}
		out[w] = acc;
	}
	if (n_support < 6)
		out[0] &= (std::uint64_t(1) << (1u << n_support)) - 1;
}

} // namespace detail

/*! \brief Exhaustive truth table of a cone over its support, per the global
 * row convention. The table's input list is the support in parent ids.
 */
inline truth_table compute_truth_table(const Cone &cone, unsigned max_support = 20)
{
	unsigned n = unsigned(cone.support.size());
	if (n > max_support)
		throw cap_error("cone support " + std::to_string(n) + " exceeds the limit of " + std::to_string(max_support));

	const Netlist &sub = cone.subnetlist;
	std::size_t n_words = truth_table::word_count(n);
	std::vector<std::vector<std::uint64_t>> value(sub.size());
	for (unsigned j = 0; j < n; ++j)
		fill_projection(value[cone.sub_support[j]], j, n);
	for (NodeId id : sub.topo_order()) {
		const Node &node = sub.node(id);
		std::vector<const std::uint64_t *> fanins;
		for (NodeId f : node.fanins)
			fanins.push_back(value[f].data());
		value[id].assign(n_words, 0);
		detail::eval_node_words(node, fanins, value[id].data(), n_words, n);
	}

	truth_table result(cone.support);
	result.words() = value[cone.sub_root];
	return result;
}

} // namespace redact_audit
