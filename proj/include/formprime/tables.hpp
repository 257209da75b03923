#ifndef FORMPRIME_TABLES_HPP
#define FORMPRIME_TABLES_HPP

#include <map>
#include <string>

#include "formprime/oracle.hpp"
#include "formprime/search.hpp"

namespace formprime {

/* Output of the end-to-end classification at a given bound. */
struct TableSet {
    std::vector<Hit> fundamental; // maximal orders
    std::vector<Hit> orders;      // nonmaximal orders
    std::vector<EquivClass> classes; // two or more fundamental discriminants
    std::vector<EquivClass> special; // the d = -3 and d = -4 chains

    std::vector<Decomposition> all_orders() const;
    std::vector<EquivClass> all_classes() const; // classes then special
};

TableSet compute_tables(const SearchConfig& cfg, const PrimeTable& pt);

/* Class tables are keyed 1-5 by (#delta, #members): (2,2) (2,3) (2,4)
 * (3,3) (3,4); table 6 holds the single-discriminant chains.  Order
 * tables 7-16 are keyed by group type:
 * (1) (2) (4) (2,2) (2,4) (2,2,2) (2,2,4) (2,2,2,2) (2,2,2,4) (2,2,2,2,4). */
int class_table_number(const EquivClass& c);
int order_table_number(const GroupType& t); // -1 for types beyond the list

/* Rows "class<TAB>form<TAB>|D|<TAB>|d|<TAB>f<TAB>genus<TAB>type<TAB>E". */
std::string render_class_table(const std::vector<EquivClass>& classes);

/* Rows "|d|<TAB>f<TAB>|D|". */
std::string render_order_table(const std::vector<Hit>& hits);

/* Contents for table1.tsv ... table16.tsv. */
std::map<int, std::string> render_tables(const TableSet& set);

void write_tables(const TableSet& set, const std::string& out_dir);

std::string pretty_class_report(const EquivClass& c);

} // namespace formprime

#endif
