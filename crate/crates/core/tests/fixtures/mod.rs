//! The two worked fivefolds (database indices 200 and 851), the printed
//! class-group presentations and the expected collections.
#![allow(dead_code)]

use hhl_core::fan::{DivisorClassMap, Fan};
use hhl_core::lattice::IntMatrix;

pub fn fan_200() -> Fan {
    Fan::new(
        5,
        vec![
            vec![-1, 0, 0, 0, 0],
            vec![0, -1, 0, 0, 0],
            vec![0, 0, -1, 0, 0],
            vec![0, 0, 1, 1, 0],
            vec![0, 0, 0, -1, 0],
            vec![0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, -1],
            vec![1, 1, 0, 0, -2],
        ],
        vec![
            vec![0, 1, 2, 3, 5],
            vec![0, 1, 2, 3, 6],
            vec![0, 1, 2, 4, 5],
            vec![0, 1, 2, 4, 6],
            vec![0, 1, 3, 4, 5],
            vec![0, 1, 3, 4, 6],
            vec![0, 2, 3, 5, 7],
            vec![0, 2, 3, 6, 7],
            vec![0, 2, 4, 5, 7],
            vec![0, 2, 4, 6, 7],
            vec![0, 3, 4, 5, 7],
            vec![0, 3, 4, 6, 7],
            vec![1, 2, 3, 5, 7],
            vec![1, 2, 3, 6, 7],
            vec![1, 2, 4, 5, 7],
            vec![1, 2, 4, 6, 7],
            vec![1, 3, 4, 5, 7],
            vec![1, 3, 4, 6, 7],
        ],
    )
    .unwrap()
}

pub fn fan_851() -> Fan {
    Fan::new(
        5,
        vec![
            vec![-1, 0, 0, 0, 0],
            vec![0, -1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, -1, 0, 0],
            vec![0, 0, 0, -1, 0],
            vec![0, 0, 0, 1, 1],
            vec![0, 0, 0, 0, -1],
            vec![1, 1, 0, 0, -1],
        ],
        vec![
            vec![0, 1, 2, 4, 5],
            vec![0, 1, 2, 4, 6],
            vec![0, 1, 2, 5, 6],
            vec![0, 1, 3, 4, 5],
            vec![0, 1, 3, 4, 6],
            vec![0, 1, 3, 5, 6],
            vec![0, 2, 4, 5, 7],
            vec![0, 2, 4, 6, 7],
            vec![0, 2, 5, 6, 7],
            vec![0, 3, 4, 5, 7],
            vec![0, 3, 4, 6, 7],
            vec![0, 3, 5, 6, 7],
            vec![1, 2, 4, 5, 7],
            vec![1, 2, 4, 6, 7],
            vec![1, 2, 5, 6, 7],
            vec![1, 3, 4, 5, 7],
            vec![1, 3, 4, 6, 7],
            vec![1, 3, 5, 6, 7],
        ],
    )
    .unwrap()
}

pub fn pi_200(fan: &Fan) -> DivisorClassMap {
    let m = IntMatrix::from_i64_rows(&[
        vec![0, 0, 1, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 1, 0],
        vec![1, 1, 0, 0, 0, 2, 0, 1],
    ]);
    DivisorClassMap::from_matrix(fan, m).unwrap()
}

pub fn pi_851(fan: &Fan) -> DivisorClassMap {
    let m = IntMatrix::from_i64_rows(&[
        vec![0, 0, 1, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 1, 1, 0],
        vec![1, 1, 0, 0, 1, 1, 0, 1],
    ]);
    DivisorClassMap::from_matrix(fan, m).unwrap()
}

pub fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v.dedup();
    v
}

pub const COLLECTION_200: [[i64; 3]; 21] = [
    [0, 0, 0],
    [0, -1, -1],
    [0, 0, -1],
    [-1, 0, 0],
    [-1, -1, -1],
    [0, -1, -2],
    [0, -1, -3],
    [-2, 0, 0],
    [-2, -1, -1],
    [0, 0, -2],
    [-1, 0, -1],
    [-1, -1, -2],
    [-1, 0, -2],
    [-2, -1, -2],
    [-1, -1, -3],
    [-2, 0, -1],
    [0, -1, -4],
    [-2, -1, -3],
    [-2, 0, -2],
    [-1, -1, -4],
    [-2, -1, -4],
];

/// Printed order with the repeated `(-1, -2, -2)` kept once.
pub const COLLECTION_851: [[i64; 3]; 18] = [
    [-1, -2, -4],
    [0, -2, -4],
    [-1, -2, -3],
    [-1, -1, -3],
    [0, -2, -3],
    [-1, -2, -2],
    [-1, -1, -2],
    [0, -1, -3],
    [-1, 0, -2],
    [-1, -1, -1],
    [-1, 0, -1],
    [0, -2, -2],
    [0, -1, -2],
    [0, 0, -2],
    [-1, 0, 0],
    [0, -1, -1],
    [0, 0, -1],
    [0, 0, 0],
];

/// Row order of the printed Hom⁰ matrix. It is the only ordering of the 18
/// classes under which the matrix matches, and differs from the listing order.
pub const MATRIX_ORDER_851: [[i64; 3]; 18] = [
    [-1, -2, -4],
    [-1, -2, -3],
    [-1, -1, -3],
    [0, -2, -4],
    [-1, -2, -2],
    [-1, -1, -2],
    [-1, 0, -2],
    [0, -2, -3],
    [0, -1, -3],
    [0, -2, -2],
    [-1, -1, -1],
    [0, -1, -2],
    [0, 0, -2],
    [-1, 0, -1],
    [0, -1, -1],
    [0, 0, -1],
    [-1, 0, 0],
    [0, 0, 0],
];

pub const HOM0_851: [[u64; 18]; 18] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [5, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [6, 3, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [12, 5, 3, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [15, 5, 5, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [6, 2, 0, 3, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [10, 2, 2, 5, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [12, 6, 0, 6, 2, 0, 0, 3, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [22, 12, 6, 0, 5, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [24, 10, 6, 12, 2, 2, 0, 5, 3, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    [30, 10, 10, 15, 2, 2, 2, 5, 5, 1, 0, 1, 1, 0, 0, 0, 0, 0],
    [31, 15, 12, 0, 5, 5, 3, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0],
    [44, 24, 12, 22, 10, 6, 0, 12, 6, 5, 2, 3, 0, 0, 1, 0, 0, 0],
    [62, 30, 24, 31, 10, 10, 6, 15, 12, 5, 2, 5, 3, 2, 1, 1, 0, 0],
    [53, 31, 22, 0, 15, 12, 6, 0, 0, 0, 5, 0, 0, 3, 0, 0, 1, 0],
    [106, 62, 44, 53, 30, 24, 12, 31, 22, 15, 10, 12, 6, 6, 5, 3, 2, 1],
];

/// Fivefolds whose collection is full strong exceptional, as published.
pub const SUCCESS_INDICES_5: [usize; 300] = [
    0, 476, 477, 478, 479, 480, 481, 482, 483, 484, 485, 486, 487, 488, 489, 490, 491, 492, 493, 494, 496, 497, 498,
    499, 500, 502, 503, 504, 505, 506, 507, 508, 509, 510, 511, 512, 513, 514, 515, 517, 518, 519, 520, 521, 522, 523,
    524, 525, 526, 527, 528, 529, 530, 531, 532, 533, 534, 536, 537, 538, 539, 540, 541, 542, 543, 544, 545, 546, 547,
    551, 552, 553, 554, 555, 556, 559, 561, 562, 563, 564, 565, 566, 567, 570, 571, 572, 573, 574, 575, 576, 577, 579,
    581, 582, 583, 584, 585, 586, 587, 588, 590, 591, 592, 593, 594, 595, 599, 600, 601, 602, 603, 604, 606, 608, 609,
    610, 611, 612, 613, 614, 615, 617, 620, 621, 623, 624, 625, 626, 628, 629, 630, 631, 632, 633, 634, 637, 638, 639,
    642, 643, 646, 647, 648, 649, 650, 651, 652, 653, 655, 656, 658, 660, 661, 662, 663, 664, 665, 667, 668, 669, 670,
    671, 672, 673, 675, 676, 677, 678, 679, 680, 681, 682, 685, 686, 687, 688, 689, 690, 691, 692, 693, 694, 695, 697,
    698, 699, 700, 702, 703, 705, 706, 709, 710, 712, 713, 714, 715, 716, 717, 718, 719, 720, 721, 722, 724, 725, 730,
    731, 732, 733, 734, 735, 737, 738, 739, 740, 743, 744, 745, 746, 747, 748, 749, 750, 751, 752, 753, 754, 758, 760,
    763, 766, 767, 773, 774, 775, 776, 777, 778, 779, 780, 781, 782, 784, 785, 788, 789, 791, 792, 794, 795, 796, 797,
    799, 800, 801, 802, 805, 809, 810, 811, 812, 813, 814, 816, 817, 818, 819, 820, 821, 822, 823, 824, 825, 826, 829,
    830, 831, 832, 834, 835, 837, 840, 841, 848, 849, 850, 851, 852, 853, 854, 855, 856, 857, 858, 859, 861, 862, 863,
    864,
];
