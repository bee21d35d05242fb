#pragma once

#include <string_view>

// Fixed prompt wording shared by the code-generation and board-description
// prompts. Kept word for word: model results are sensitive to it.
namespace sartco::prompt_text {

inline constexpr std::string_view kEnvironmentGrid =
    "The environment is an 8x8 grid allowing shape placement and stacking. A shape can be "
    "placed in any cell, while stacking involves adding multiple shapes to the same cell, "
    "increasing its depth. Shapes typically occupy a single cell, except for the \"bridge,\" "
    "which spans two cells and requires two other shapes for stacking. Horizontal bridges span "
    "adjacent columns (left and right), and vertical ones span consecutive rows (top and "
    "bottom). Stacking is only possible if the shapes have matching depths.";

// --- code generation ---

inline constexpr std::string_view kCodeSystem =
    "You are a helpful assistant who is designed to interpret and translate natural language "
    "instructions into python executable code snippets.";

inline constexpr std::string_view kCodeAxes =
    "In the grid, columns align with the x-axis and rows with the y-axis. Python indexing is "
    "used to identify each cell. The cell in the top-left corner is in the first row and first "
    "column, corresponding to x and y values of 0, 0. Similarly, the top-right corner cell is in "
    "the first row and eighth column, with x and y values of 0, 7.";

inline constexpr std::string_view kBridgeNaming =
    "- Use the shape name 'bridge-h' if a bridge is placed horizontally\n"
    "- Use the shape name 'bridge-v' if a bridge is placed vertically";

inline constexpr std::string_view kContextPreamble =
    "The following functions are already defined; therefore, do not generate additional code "
    "for it";

inline constexpr std::string_view kContextPut =
    "- Use `put(board: np.ndarray, shape: string, color: string, x: int, y: int) to place a "
    "shape on the board";

// $INSTRUCTION_LABEL and $OUTPUT_LABEL are substituted by the prompt builder.
inline constexpr std::string_view kCodeTask =
    "For each instruction labeled $INSTRUCTION_LABEL please respond with code under the label "
    "$OUTPUT_LABEL followed by a newline.";

inline constexpr std::string_view kNoOtherText = "Do not generate any other text/explanations.";

inline constexpr std::string_view kExecHint =
    "Ensure the response can be executed by Python `exec()`, e.g.: no trailing commas, no "
    "periods, etc.";

inline constexpr std::string_view kBegin = "Lets begin";

// --- board description ---

inline constexpr std::string_view kDescribeSystem =
    "You are an expert annotator who generates sequential instructions for populating a grid "
    "with the given shapes.";

inline constexpr std::string_view kDescribeAxes =
    "In the grid, columns align with the x-axis and rows with the y-axis. The cell in the "
    "top-left corner is the first row and first column, corresponding to row and column values "
    "of 1, 1. Similarly, the top-right corner cell is the first row and eighth column, with row "
    "and column values of 1, 8.";

inline constexpr std::string_view kDescribeGridShapes =
    "Some of the cells in the grid are filled with shapes, and the current status of the grid "
    "is labeled under `Current Grid Status'. If multiple shapes are placed in the same cell, "
    "they are mentioned in the order from bottom to top. All the shapes combined are referred "
    "to as an `object', and the name of the object is labeled under `Object Name'. Each filled "
    "cell in the grid contains a list of tuples, where each tuple indicates the name of the "
    "shape and its color. Empty cells are indicated by `□'.";

inline constexpr std::string_view kDescribeGridObjects =
    "Some of the cells in the grid are filled with objects, and the current status of the grid "
    "is labeled under `Current Grid Status'. Each filled cell in the grid contains a list of "
    "tuples, where each tuple indicates the name of the object and its colors. Empty cells are "
    "indicated by `□'.";

inline constexpr std::string_view kDescribeExplanation =
    "The elaboration about the grid is labeled under 'Grid Explanation'.";

inline constexpr std::string_view kDescribeTask =
    "Your task is to respond with the sequential instructions under the label Instruction "
    "followed by a newline.";

inline constexpr std::string_view kDescribeTaskShapes =
    "Generate the instructions to fill the grid with given shapes, listing all steps in a "
    "continuous format without numbering or bullet points. Also ensure to mention the object "
    "name in the instructions. Assume the grid starts empty and only describe actions for "
    "placing shapes. The order of colors, x, y matters, as these are assigned to the shapes in "
    "the same sequence.";

inline constexpr std::string_view kDescribeTaskObjects =
    "Generate the instructions to fill the grid with the given object, in a continuous format "
    "without numbering or bullet points. Assume the grid starts empty and only describe actions "
    "for placing the object. The order of colors, x, y matters, as these are assigned to the "
    "object in the same sequence.";

}  // namespace sartco::prompt_text
