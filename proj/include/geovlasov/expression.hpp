#pragma once

// Tiny arithmetic-expression evaluator for custom initial conditions f(x, v):
// +, -, *, /, ^ (right associative), parentheses, unary minus, the variables
// x and v, the constants pi and e, and the usual one-argument functions.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace geovlasov {

class Expression {
public:
    static Expression parse(const std::string& text)
    {
        Parser p{text, 0};
        Expression e;
        e.root_ = p.parse_expr();
        p.skip_ws();
        if (p.pos != text.size())
            throw std::invalid_argument("expression: trailing input at position "
                                        + std::to_string(p.pos));
        return e;
    }

    double operator()(double x, double v) const { return root_->eval(x, v); }

private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(double x, double v) const = 0;
    };
    using NodePtr = std::unique_ptr<Node>;

    struct Constant : Node {
        double value;
        explicit Constant(double c) : value(c) {}
        double eval(double, double) const override { return value; }
    };
    struct Variable : Node {
        bool is_x;
        explicit Variable(bool x) : is_x(x) {}
        double eval(double x, double v) const override { return is_x ? x : v; }
    };
    struct Unary : Node {
        double (*fn)(double);
        NodePtr arg;
        Unary(double (*f)(double), NodePtr a) : fn(f), arg(std::move(a)) {}
        double eval(double x, double v) const override { return fn(arg->eval(x, v)); }
    };
    struct Binary : Node {
        char op;
        NodePtr lhs, rhs;
        Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
        double eval(double x, double v) const override
        {
            const double a = lhs->eval(x, v);
            const double b = rhs->eval(x, v);
            switch (op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            default: return std::pow(a, b);
            }
        }
    };

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip_ws()
        {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t'))
                ++pos;
        }
        bool accept(char c)
        {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& what) const
        {
            throw std::invalid_argument("expression: " + what + " at position "
                                        + std::to_string(pos));
        }

        NodePtr parse_expr()
        {
            NodePtr lhs = parse_term();
            for (;;) {
                if (accept('+'))
                    lhs = std::make_unique<Binary>('+', std::move(lhs), parse_term());
                else if (accept('-'))
                    lhs = std::make_unique<Binary>('-', std::move(lhs), parse_term());
                else
                    return lhs;
            }
        }
        NodePtr parse_term()
        {
            NodePtr lhs = parse_factor();
            for (;;) {
                if (accept('*'))
                    lhs = std::make_unique<Binary>('*', std::move(lhs), parse_factor());
                else if (accept('/'))
                    lhs = std::make_unique<Binary>('/', std::move(lhs), parse_factor());
                else
                    return lhs;
            }
        }
        // '^' is right associative and binds tighter than unary minus
        NodePtr parse_factor()
        {
            if (accept('-'))
                return std::make_unique<Binary>(
                    '-', std::make_unique<Constant>(0.0), parse_factor());
            NodePtr base = parse_primary();
            if (accept('^'))
                return std::make_unique<Binary>('^', std::move(base), parse_factor());
            return base;
        }
        NodePtr parse_primary()
        {
            skip_ws();
            if (accept('(')) {
                NodePtr e = parse_expr();
                if (!accept(')'))
                    fail("expected ')'");
                return e;
            }
            if (pos >= s.size())
                fail("unexpected end of input");
            if (std::isdigit((unsigned char)s[pos]) || s[pos] == '.') {
                std::size_t used = 0;
                const double v = std::stod(s.substr(pos), &used);
                pos += used;
                return std::make_unique<Constant>(v);
            }
            if (std::isalpha((unsigned char)s[pos])) {
                std::size_t end = pos;
                while (end < s.size() && (std::isalnum((unsigned char)s[end]) || s[end] == '_'))
                    ++end;
                const std::string name = s.substr(pos, end - pos);
                pos = end;
                if (name == "x")
                    return std::make_unique<Variable>(true);
                if (name == "v")
                    return std::make_unique<Variable>(false);
                if (name == "pi")
                    return std::make_unique<Constant>(3.14159265358979323846);
                if (name == "e")
                    return std::make_unique<Constant>(2.71828182845904523536);
                double (*fn)(double) = nullptr;
                if (name == "sin") fn = std::sin;
                else if (name == "cos") fn = std::cos;
                else if (name == "tan") fn = std::tan;
                else if (name == "exp") fn = std::exp;
                else if (name == "log") fn = std::log;
                else if (name == "sqrt") fn = std::sqrt;
                else if (name == "abs") fn = std::fabs;
                else if (name == "sinh") fn = std::sinh;
                else if (name == "cosh") fn = std::cosh;
                else if (name == "tanh") fn = std::tanh;
                if (!fn)
                    fail("unknown identifier '" + name + "'");
                if (!accept('('))
                    fail("expected '(' after function name");
                NodePtr arg = parse_expr();
                if (!accept(')'))
                    fail("expected ')'");
                return std::make_unique<Unary>(fn, std::move(arg));
            }
            fail(std::string("unexpected character '") + s[pos] + "'");
        }
    };

    std::shared_ptr<const Node> root_;

    Expression() = default;
};

} // namespace geovlasov
